#pragma once

#include <string>
#include <string_view>

namespace salvo {

// Ratio of two positive odd integers, used as a signed power exponent.
// num > den ("super-unit") or num < den ("sub-unit"); num == den rejected.
class OddRatio {
public:
    OddRatio(int num, int den);

    int num() const { return num_; }
    int den() const { return den_; }
    double value() const { return static_cast<double>(num_) / den_; }
    bool super_unit() const { return num_ > den_; }

    static OddRatio parse(std::string_view text);  // "11/9"
    std::string str() const;

    bool operator==(const OddRatio&) const = default;

private:
    int num_;
    int den_;
};

// sign(x) * |x|^(num/den); continuous and odd in x.
double pow_odd(double x, const OddRatio& e);
double pow_odd(double x, double e);

// Fast nonsingular terminal sliding surface
//   s = xi_vr + alpha1*xi_r + alpha2*beta(xi_r)
// where beta is a piecewise function of xi_r: a fractional-power branch away
// from the origin and a linear+quadratic patch inside |xi_r| < mu that removes
// the singular derivative of the fractional power. Patch coefficients
//   l1 = (2 - p/q) mu^(p/q - 1),  l2 = (p/q - 1) mu^(p/q - 2)
// make the patch match pow_odd(., p/q) in value and slope at |xi_r| = mu.
struct SurfaceParams {
    double alpha1 = 0.25;               // 1/s
    double alpha2 = 2.0;
    OddRatio exp_super{11, 9};          // m1/n1 > 1
    OddRatio exp_sub{5, 7};             // p1/q1 < 1
    double mu = 1e-3;                   // patch radius, m

    double l1() const;
    double l2() const;
    void validate() const;  // throws ValidationError naming the bad field

    bool operator==(const SurfaceParams&) const = default;
};

enum class SurfaceBranch : char { A = 'A', B = 'B' };

// s_bar = xi_vr + alpha1*xi_r + alpha2*pow_odd(xi_r, p1/q1); selects the branch.
double s_bar(double xi_r, double xi_vr, const SurfaceParams& p);

// Branch A when s_bar == 0 or |xi_r| >= mu (ties inclusive), else branch B.
SurfaceBranch surface_branch(double xi_r, double xi_vr, const SurfaceParams& p);

double beta(double xi_r, double xi_vr, const SurfaceParams& p);

// Time derivative of beta along trajectories (chain rule through xi_r, whose
// rate is xi_vr). Exponent-minus-one powers are evaluated on |xi_r| since the
// derivative of pow_odd is even in its argument. Branch A at xi_r == 0 with
// xi_vr != 0 is the singular evaluation the patch exists to avoid; reaching it
// is a branch-selection bug and throws.
double beta_dot(double xi_r, double xi_vr, const SurfaceParams& p);

double surface(double xi_r, double xi_vr, const SurfaceParams& p);

}  // namespace salvo
