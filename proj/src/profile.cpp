#include "ri/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ri {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Profiles are closed forms on all of (0,1); only guard the representable
// range (the 1e-9 evaluation floor applies to operator outputs, not here).
double clamp_profile(double t) {
    if (t < 1e-300) return 1e-300;
    if (t > 1.0 - 1e-15) return 1.0 - 1e-15;
    return t;
}

double bisect_inverse(const std::function<double(double)>& I, double y,
                      double lo, double hi) {
    // smallest t with I(t) >= y on [lo, hi], I nondecreasing
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(hi, 1e-30); ++it) {
        double m = std::sqrt(lo * hi);  // geometric bisection suits the log scale
        if (I(m) >= y)
            hi = m;
        else
            lo = m;
    }
    return hi;
}

}  // namespace

PhiSpec PhiSpec::power(double beta) {
    if (!(beta >= 1.0))
        throw std::invalid_argument("PhiSpec::power: beta must be >= 1 for convexity");
    PhiSpec s;
    s.phi = [beta](double t) { return std::pow(t, beta); };
    s.dphi = [beta](double t) { return beta * std::pow(t, beta - 1.0); };
    s.inv = [beta](double y) { return std::pow(y, 1.0 / beta); };
    std::ostringstream os;
    os << "phi:" << beta;
    s.name = os.str();
    return s;
}

PhiValidation validate_phi(const PhiSpec& phi) {
    PhiValidation v;
    auto fail = [&v](const std::string& msg, double t) {
        v.ok = false;
        v.message = msg;
        v.witness = t;
        return v;
    };
    if (std::abs(phi.phi(0.0)) > 1e-12) return fail("Phi(0) must be 0", 0.0);
    double prev_phi = 0.0, prev_slope = -kInf, prev_sqrt_slope = kInf;
    double prev_t = 0.0;
    for (int k = 1; k <= 400; ++k) {
        double t = 20.0 * k / 400.0;
        double p = phi.phi(t);
        if (!(p > prev_phi)) return fail("Phi must be strictly increasing", t);
        double slope = (p - prev_phi) / (t - prev_t);
        if (slope < prev_slope - 1e-9 * std::abs(prev_slope))
            return fail("Phi must be convex", t);
        double sqrt_slope = (std::sqrt(p) - std::sqrt(prev_phi)) / (t - prev_t);
        if (sqrt_slope > prev_sqrt_slope + 1e-9 * std::abs(prev_sqrt_slope))
            return fail("sqrt(Phi) must be concave", t);
        double back = phi.inv(p);
        if (std::abs(back - t) > 1e-8 * std::max(1.0, t))
            return fail("Phi inverse is inconsistent", t);
        prev_phi = p;
        prev_slope = slope;
        prev_sqrt_slope = sqrt_slope;
        prev_t = t;
    }
    return v;
}

void Profile::compute_hint() {
    // cheap quasiconcavity probe: I nondecreasing and I(t)/t nonincreasing
    double prev_I = 0.0, prev_ratio = kInf;
    bool ok = true;
    for (int k = 1; k <= 512; ++k) {
        double t = std::pow(10.0, -12.0 + 12.0 * k / 512.0);
        if (t >= 1.0) break;
        double I = (*this)(t);
        double ratio = I / t;
        if (I < prev_I * (1.0 - 1e-10) || ratio > prev_ratio * (1.0 + 1e-10)) {
            ok = false;
            break;
        }
        prev_I = I;
        prev_ratio = ratio;
    }
    quasiconcave_hint_ = ok;
}

Profile Profile::power(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("Profile::power: alpha must be in (0, 1]");
    Profile p;
    p.kind_ = Kind::Power;
    p.alpha_ = alpha;
    std::ostringstream os;
    os << "power(" << alpha << ")";
    p.spec_ = os.str();
    p.quasiconcave_hint_ = true;
    return p;
}

Profile Profile::product(const PhiSpec& phi) {
    auto v = validate_phi(phi);
    if (!v.ok) {
        std::ostringstream os;
        os << "Profile::product: " << v.message << " (witness t = " << v.witness << ")";
        throw std::invalid_argument(os.str());
    }
    // Representative formula on (0, 1/2]; the reflected branch on (1/2, 1) is
    // replaced by its nondecreasing envelope (the plateau at the half point)
    // so the profile stays a nondecreasing map onto (0,1], then rescaled so
    // that I(1-) = 1.
    auto raw = [phi](double t) {
        double u = std::min(t, 0.5);
        return u * phi.dphi(phi.inv(std::log(2.0 / u)));
    };
    double at_half = raw(0.5);
    if (!(at_half > 0.0) || !std::isfinite(at_half))
        throw std::invalid_argument("Profile::product: degenerate profile at t = 1/2");
    Profile p;
    p.kind_ = Kind::Product;
    p.raw_ = raw;
    p.norm_scale_ = 1.0 / at_half;
    p.spec_ = "product(" + phi.name + ")";
    p.formula_knots_ = {0.5};
    p.compute_hint();
    return p;
}

Profile Profile::tabulated(std::vector<double> t, std::vector<double> I) {
    if (t.size() != I.size() || t.size() < 2)
        throw std::invalid_argument("Profile::tabulated: need at least two samples");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0 && t[i] < 1.0) || (i > 0 && t[i] <= t[i - 1]))
            throw std::invalid_argument("Profile::tabulated: t must be strictly increasing in (0,1)");
        if (!(I[i] > 0.0) || (i > 0 && I[i] < I[i - 1]))
            throw std::invalid_argument("Profile::tabulated: I must be positive and nondecreasing");
    }
    auto ts = std::make_shared<std::vector<double>>(std::move(t));
    auto Is = std::make_shared<std::vector<double>>(std::move(I));
    // piecewise log-log interpolation, edge segments extrapolate
    auto raw = [ts, Is](double x) {
        const auto& tv = *ts;
        const auto& Iv = *Is;
        std::size_t n = tv.size();
        std::size_t j;
        if (x <= tv.front())
            j = 0;
        else if (x >= tv.back())
            j = n - 2;
        else
            j = static_cast<std::size_t>(std::upper_bound(tv.begin(), tv.end(), x) - tv.begin()) - 1;
        double m = std::log(Iv[j + 1] / Iv[j]) / std::log(tv[j + 1] / tv[j]);
        return Iv[j] * std::pow(x / tv[j], m);
    };
    double edge = std::log((*Is)[1] / (*Is)[0]) / std::log((*ts)[1] / (*ts)[0]);
    if (!(edge > 0.0))
        throw std::invalid_argument("Profile::tabulated: leading segment must increase so I(0+) = 0");
    Profile p;
    p.kind_ = Kind::Tabulated;
    p.raw_ = raw;
    p.norm_scale_ = 1.0 / raw(1.0);
    p.spec_ = "table";
    p.formula_knots_.assign(ts->begin(), ts->end());
    p.compute_hint();
    return p;
}

Profile Profile::log_reciprocal() {
    Profile p;
    p.kind_ = Kind::LogReciprocal;
    p.spec_ = "log";
    p.compute_hint();  // fails quasiconcavity near t = 1, recorded honestly
    return p;
}

Profile Profile::tilde_of(const Profile& base) {
    Profile p;
    p.kind_ = Kind::Tilde;
    if (base.kind_ == Kind::Power && base.alpha_ < 1.0) {
        // t / t^alpha = t^(1-alpha): stays a closed-form power profile
        return Profile::power(1.0 - base.alpha_);
    }
    auto b = std::make_shared<Profile>(base);
    p.raw_ = [b](double t) { return t / (*b)(t); };
    p.norm_scale_ = 1.0;
    p.spec_ = "tilde(" + base.spec_ + ")";
    p.formula_knots_ = base.formula_knots_;
    p.compute_hint();
    return p;
}

double Profile::operator()(double t) const {
    t = clamp_profile(t);
    switch (kind_) {
        case Kind::Power:
            return std::pow(t, alpha_);
        case Kind::LogReciprocal:
            return kLn2 / std::log(2.0 / t);
        default:
            return norm_scale_ * raw_(t);
    }
}

double Profile::inverse(double y) const {
    if (!(y > 0.0)) return 0.0;
    y = std::min(y, 1.0);
    switch (kind_) {
        case Kind::Power:
            return std::pow(y, 1.0 / alpha_);
        case Kind::LogReciprocal:
            return 2.0 * std::exp(-kLn2 / y);
        default:
            return bisect_inverse([this](double t) { return (*this)(t); }, y, 1e-300, 1.0);
    }
}

IntegralResult Profile::int_I_over_s(double t) const {
    t = clamp_profile(t);
    switch (kind_) {
        case Kind::Power:
            return {std::pow(t, alpha_) / alpha_, false};
        case Kind::LogReciprocal:
            return divergent_integral();  // log log divergence at zero
        default:
            return integrate_to_zero([this](double s) { return (*this)(s) / s; }, t);
    }
}

IntegralResult Profile::int_recip_I(double t) const {
    t = clamp_profile(t);
    switch (kind_) {
        case Kind::Power:
            if (alpha_ >= 1.0) return divergent_integral();
            return {std::pow(t, 1.0 - alpha_) / (1.0 - alpha_), false};
        case Kind::LogReciprocal:
            return {t * (std::log(2.0 / t) + 1.0) / kLn2, false};
        default:
            return integrate_to_zero([this](double s) { return 1.0 / (*this)(s); }, t);
    }
}

double Profile::int_I_over_s2(double t) const {
    t = clamp_profile(t);
    if (kind_ == Kind::Power) {
        if (alpha_ == 1.0) return std::log(1.0 / t);
        return std::expm1((alpha_ - 1.0) * std::log(t)) / (1.0 - alpha_);
    }
    return integrate_octaves([this](double s) { return (*this)(s) / (s * s); }, t, 1.0);
}

double Profile::int_I_over_s3(double t) const {
    t = clamp_profile(t);
    if (kind_ == Kind::Power)
        return std::expm1((alpha_ - 2.0) * std::log(t)) / (2.0 - alpha_);
    return integrate_octaves([this](double s) { return (*this)(s) / (s * s * s); }, t, 1.0);
}

double Profile::int_s_over_I(double t) const {
    t = clamp_profile(t);
    switch (kind_) {
        case Kind::Power:
            return std::pow(t, 2.0 - alpha_) / (2.0 - alpha_);
        case Kind::LogReciprocal:
            return t * t * (2.0 * std::log(2.0 / t) + 1.0) / (4.0 * kLn2);
        default:
            return integrate_to_zero([this](double s) { return s / (*this)(s); }, t).value;
    }
}

double Profile::int_I_over_s_between(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (a <= 0.0) {
        auto r = int_I_over_s(b);
        return r.divergent ? kInf : r.value;
    }
    switch (kind_) {
        case Kind::Power:
            return (std::pow(b, alpha_) - std::pow(a, alpha_)) / alpha_;
        case Kind::LogReciprocal:
            return kLn2 * (std::log(std::log(2.0 / a)) - std::log(std::log(2.0 / b)));
        default:
            return integrate_octaves([this](double s) { return (*this)(s) / s; }, a, b);
    }
}

double Profile::int_recip_I_between(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (a <= 0.0) {
        auto r = int_recip_I(b);
        return r.divergent ? kInf : r.value;
    }
    switch (kind_) {
        case Kind::Power:
            if (alpha_ == 1.0) return std::log(b / a);
            return (std::pow(b, 1.0 - alpha_) - std::pow(a, 1.0 - alpha_)) / (1.0 - alpha_);
        case Kind::LogReciprocal:
            return (b * (std::log(2.0 / b) + 1.0) - a * (std::log(2.0 / a) + 1.0)) / kLn2;
        default:
            return integrate_octaves([this](double s) { return 1.0 / (*this)(s); }, a, b);
    }
}

double Profile::int_I_over_s2_between(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (a <= 0.0) return kInf;  // I/s^2 is never integrable at zero here
    if (kind_ == Kind::Power) {
        if (alpha_ == 1.0) return std::log(b / a);
        return (std::pow(a, alpha_ - 1.0) - std::pow(b, alpha_ - 1.0)) / (1.0 - alpha_);
    }
    return integrate_octaves([this](double s) { return (*this)(s) / (s * s); }, a, b);
}

double Profile::int_s_over_I_between(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (a <= 0.0) return int_s_over_I(b);
    switch (kind_) {
        case Kind::Power:
            return (std::pow(b, 2.0 - alpha_) - std::pow(a, 2.0 - alpha_)) / (2.0 - alpha_);
        case Kind::LogReciprocal:
            return int_s_over_I(b) - int_s_over_I(a);
        default:
            return integrate_octaves([this](double s) { return s / (*this)(s); }, a, b);
    }
}

Profile parse_profile_spec(const std::string& spec) {
    if (spec.rfind("power(", 0) == 0 && spec.back() == ')') {
        double a = std::stod(spec.substr(6, spec.size() - 7));
        return Profile::power(a);
    }
    if (spec == "gaussian") return Profile::product(PhiSpec::power(2.0));
    if (spec == "exp") return Profile::product(PhiSpec::power(1.0));
    if (spec.rfind("phi:", 0) == 0)
        return Profile::product(PhiSpec::power(std::stod(spec.substr(4))));
    if (spec == "log") return Profile::log_reciprocal();
    if (spec.rfind("table:", 0) == 0) {
        std::string path = spec.substr(6);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("profile table not found: " + path);
        std::string line;
        std::vector<double> ts, Is;
        bool header = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (header) {
                header = false;
                if (line.find("t") != std::string::npos && !std::isdigit(line[0])) continue;
            }
            auto comma = line.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("profile table: expected 't,I' rows");
            ts.push_back(std::stod(line.substr(0, comma)));
            Is.push_back(std::stod(line.substr(comma + 1)));
        }
        return Profile::tabulated(std::move(ts), std::move(Is));
    }
    throw std::invalid_argument("unknown profile spec: " + spec +
                                " (expected power(a)|gaussian|exp|phi:<b>|log|table:<path>)");
}

}  // namespace ri
