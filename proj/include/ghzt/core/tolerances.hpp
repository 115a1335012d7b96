#pragma once

namespace ghzt {

// Numerical thresholds used by validating operations. Every field has a
// default; callers override by passing a modified copy.
struct Tolerances {
    double hermitian = 1e-12;        // max |m_ij - conj(m_ji)|
    double trace = 1e-12;            // |tr(rho) - 1|
    double psd = 1e-10;              // smallest eigenvalue >= -psd
    double norm = 1e-12;             // | ||psi|| - 1 |
    double unitary = 1e-10;          // max |(U^dag U - I)_ij|
    double kraus_completeness = 1e-10;
    double eigen_input_hermitian = 1e-10;
    double jacobi_off_diagonal = 1e-14;  // relative to the Frobenius norm
    double zero_probability = 1e-14;     // branches at or below this carry no state
    double physical_coords = 1e-12;      // slack on the triangle inequalities
    double class_boundary = 1e-12;       // measures at or below this count as zero
};

}  // namespace ghzt
