#include "perigp/cosine_form.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace perigp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
// Amplitudes below this fraction of the largest term are treated as the
// zero function (which has no phase) and dropped.
constexpr double kDropRatio = 1e-14;

double wrap_phase(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    return phi;
}
}  // namespace

CosineTerm canonical_term(double rc, double rs, double freq) {
    if (freq == 0.0) {
        // cos(0*x + phi) is the constant rc; phase restricted to {0, pi}.
        return {std::abs(rc), 0.0, rc >= 0.0 ? 0.0 : 3.141592653589793238462643383280};
    }
    const double rho = std::hypot(rc, rs);
    const double phi = rho > 0.0 ? wrap_phase(std::atan2(rs, rc)) : 0.0;
    return {rho, freq, phi};
}

CosineForm CosineForm::harmonic(double amplitude, double freq, double phase) {
    return from_terms({{amplitude, freq, phase}});
}

CosineForm CosineForm::constant(double value) { return from_terms({{value, 0.0, 0.0}}); }

CosineForm CosineForm::sine(double freq) {
    return harmonic(1.0, freq, -1.570796326794896619231321691640);
}

CosineForm CosineForm::cosine(double freq) { return harmonic(1.0, freq, 0.0); }

CosineForm CosineForm::from_terms(std::vector<CosineTerm> terms) {
    // Accumulate per frequency in (rc, rs) components. Frequencies are
    // compared bit-exactly: callers construct related terms from the same
    // doubles, so coincident frequencies really are identical.
    std::map<double, std::pair<double, double>> acc;
    double max_amp = 0.0;
    for (const CosineTerm& t : terms) {
        const double freq = std::abs(t.freq);
        double rc, rs;
        if (t.freq >= 0.0) {
            rc = t.amplitude * std::cos(t.phase);
            rs = t.amplitude * std::sin(t.phase);
        } else {
            // cos(-w x + phi) = cos(w x - phi)
            rc = t.amplitude * std::cos(-t.phase);
            rs = t.amplitude * std::sin(-t.phase);
        }
        auto& slot = acc[freq];
        slot.first += rc;
        slot.second += rs;
        max_amp = std::max(max_amp, std::abs(t.amplitude));
    }
    CosineForm out;
    for (const auto& [freq, comp] : acc) {
        CosineTerm term = canonical_term(comp.first, comp.second, freq);
        if (term.amplitude > kDropRatio * max_amp && term.amplitude > 0.0)
            out.terms_.push_back(term);
    }
    return out;
}

double CosineForm::operator()(double x) const { return derivative(0, x); }

double CosineForm::derivative(int order, double x) const {
    const double shift = 1.570796326794896619231321691640 * order;
    double sum = 0.0;
    for (const CosineTerm& t : terms_) {
        double scale = 1.0;
        for (int j = 0; j < order; ++j) scale *= t.freq;
        sum += t.amplitude * scale * std::cos(t.freq * x + t.phase + shift);
    }
    return sum;
}

CosineForm CosineForm::derivative_form(int order) const {
    const double shift = 1.570796326794896619231321691640 * order;
    std::vector<CosineTerm> out;
    out.reserve(terms_.size());
    for (const CosineTerm& t : terms_) {
        double scale = 1.0;
        for (int j = 0; j < order; ++j) scale *= t.freq;
        out.push_back({t.amplitude * scale, t.freq, t.phase + shift});
    }
    return from_terms(std::move(out));
}

CosineForm CosineForm::operator+(const CosineForm& other) const {
    std::vector<CosineTerm> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return from_terms(std::move(all));
}

CosineForm CosineForm::operator*(double scale) const {
    std::vector<CosineTerm> out = terms_;
    for (CosineTerm& t : out) t.amplitude *= scale;
    return from_terms(std::move(out));
}

double CosineForm::max_amplitude() const {
    double m = 0.0;
    for (const CosineTerm& t : terms_) m = std::max(m, t.amplitude);
    return m;
}

}  // namespace perigp
