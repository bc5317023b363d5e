#pragma once

#include <vector>

namespace perigp {

/// One canonical cosine term: amplitude * cos(freq * x + phase) with
/// amplitude >= 0, freq >= 0 and phase in [0, 2*pi).
struct CosineTerm {
    double amplitude;
    double freq;
    double phase;
};

/// Finite sums of cosines, kept in canonical form: terms sorted by strictly
/// increasing frequency, at most one term per frequency, near-zero
/// amplitudes dropped. Closed under differentiation and under the
/// autoregressive operators of the Matern spaces, which is what makes the
/// Gram-matrix integrals exact.
class CosineForm {
public:
    CosineForm() = default;

    /// Single term rho*cos(omega*x + phi); canonicalized.
    static CosineForm harmonic(double amplitude, double freq, double phase);
    /// Constant function.
    static CosineForm constant(double value);
    /// sin(omega*x) == cos(omega*x - pi/2).
    static CosineForm sine(double freq);
    /// cos(omega*x).
    static CosineForm cosine(double freq);
    /// Build from raw terms (merges duplicated frequencies).
    static CosineForm from_terms(std::vector<CosineTerm> terms);

    const std::vector<CosineTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double operator()(double x) const;
    /// j-th derivative, evaluated in closed form.
    double derivative(int order, double x) const;
    CosineForm derivative_form(int order = 1) const;

    CosineForm operator+(const CosineForm& other) const;
    CosineForm operator*(double scale) const;

    /// Largest term amplitude (0 for the zero form).
    double max_amplitude() const;

private:
    std::vector<CosineTerm> terms_;
};

/// Canonicalize (rho*cos(.+phi)) given the cosine/sine components
/// rc = rho*cos(phi), rs = rho*sin(phi). The zero form gets phase 0 and is
/// dropped by the caller when rho is negligible.
CosineTerm canonical_term(double rc, double rs, double freq);

}  // namespace perigp
