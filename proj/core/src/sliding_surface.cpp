#include "salvo/sliding_surface.hpp"

#include <cmath>
#include <charconv>

#include "salvo/errors.hpp"

namespace salvo {

OddRatio::OddRatio(int num, int den) : num_(num), den_(den) {
    if (num <= 0 || den <= 0) {
        throw ValidationError("OddRatio: numerator and denominator must be positive");
    }
    if (num % 2 == 0 || den % 2 == 0) {
        throw ValidationError("OddRatio: numerator and denominator must be odd");
    }
    if (num == den) {
        throw ValidationError("OddRatio: ratio must not equal one");
    }
}

OddRatio OddRatio::parse(std::string_view text) {
    const size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw ValidationError("OddRatio: expected \"num/den\", got \"" + std::string(text) + "\"");
    }
    auto parse_int = [&](std::string_view part) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size()) {
            throw ValidationError("OddRatio: bad integer in \"" + std::string(text) + "\"");
        }
        return value;
    };
    return OddRatio(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string OddRatio::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double pow_odd(double x, double e) {
    if (x == 0.0) {
        return 0.0;
    }
    return std::copysign(std::pow(std::fabs(x), e), x);
}

double pow_odd(double x, const OddRatio& e) { return pow_odd(x, e.value()); }

double SurfaceParams::l1() const {
    const double pq = exp_sub.value();
    return (2.0 - pq) * std::pow(mu, pq - 1.0);
}

double SurfaceParams::l2() const {
    const double pq = exp_sub.value();
    return (pq - 1.0) * std::pow(mu, pq - 2.0);
}

void SurfaceParams::validate() const {
    if (!(alpha1 > 0.0)) {
        throw ValidationError("surface: alpha1 must be positive");
    }
    if (!(alpha2 > 0.0)) {
        throw ValidationError("surface: alpha2 must be positive");
    }
    if (!exp_super.super_unit()) {
        throw ValidationError("surface: exp_super must exceed one");
    }
    if (exp_sub.super_unit()) {
        throw ValidationError("surface: exp_sub must be below one");
    }
    if (!(mu > 0.0)) {
        throw ValidationError("surface: mu must be positive");
    }
}

double s_bar(double xi_r, double xi_vr, const SurfaceParams& p) {
    return xi_vr + p.alpha1 * xi_r + p.alpha2 * pow_odd(xi_r, p.exp_sub);
}

SurfaceBranch surface_branch(double xi_r, double xi_vr, const SurfaceParams& p) {
    const double sb = s_bar(xi_r, xi_vr, p);
    if (sb == 0.0 || std::fabs(xi_r) >= p.mu) {
        return SurfaceBranch::A;
    }
    return SurfaceBranch::B;
}

double beta(double xi_r, double xi_vr, const SurfaceParams& p) {
    const double ratio = p.alpha1 / p.alpha2;
    if (surface_branch(xi_r, xi_vr, p) == SurfaceBranch::A) {
        return -ratio * xi_r + ratio * pow_odd(xi_r, p.exp_super) + pow_odd(xi_r, p.exp_sub);
    }
    return p.l1() * xi_r + p.l2() * std::copysign(1.0, xi_r) * xi_r * xi_r;
}

double beta_dot(double xi_r, double xi_vr, const SurfaceParams& p) {
    if (xi_vr == 0.0) {
        return 0.0;  // common factor xi_vr
    }
    const double ax = std::fabs(xi_r);
    if (surface_branch(xi_r, xi_vr, p) == SurfaceBranch::A) {
        if (xi_r == 0.0) {
            throw NumericError(
                "beta_dot: singular evaluation on branch A at xi_r = 0; "
                "branch selection upstream is broken");
        }
        const double sup = p.exp_super.value();
        const double sub = p.exp_sub.value();
        const double bracket = -p.alpha1 / p.alpha2 +
                               (sup * p.alpha1 / p.alpha2) * std::pow(ax, sup - 1.0) +
                               sub * std::pow(ax, sub - 1.0);
        return bracket * xi_vr;
    }
    return (p.l1() + 2.0 * p.l2() * ax) * xi_vr;
}

double surface(double xi_r, double xi_vr, const SurfaceParams& p) {
    return xi_vr + p.alpha1 * xi_r + p.alpha2 * beta(xi_r, xi_vr, p);
}

}  // namespace salvo
