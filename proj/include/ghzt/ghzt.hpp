#pragma once

#include "ghzt/core/circuit.hpp"
#include "ghzt/core/eigen.hpp"
#include "ghzt/core/errors.hpp"
#include "ghzt/core/matrix.hpp"
#include "ghzt/core/state.hpp"
#include "ghzt/core/tolerances.hpp"
#include "ghzt/classification.hpp"
#include "ghzt/experiments.hpp"
#include "ghzt/ghz_symmetric.hpp"
#include "ghzt/localizable.hpp"
#include "ghzt/measures.hpp"
#include "ghzt/noise.hpp"
#include "ghzt/optimize.hpp"
#include "ghzt/roots.hpp"
#include "ghzt/teleport.hpp"
