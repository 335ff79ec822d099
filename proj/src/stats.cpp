#include "bikevol/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bikevol/errors.hpp"

namespace bikevol {

// continued fraction for I_x(a,b), modified Lentz
static double incbeta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double eps = 1e-15;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * incbeta_cf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     incbeta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
    if (dof <= 0.0) throw ConfigError("t-test needs positive degrees of freedom");
    double x = dof / (dof + t * t);
    return incomplete_beta(dof / 2.0, 0.5, x);
}

OlsResult ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ConfigError("ols: mismatched lengths");
    std::size_t n = x.size();
    if (n < 3) throw DataError("ols: need at least 3 observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DataError("ols: zero variance in x");

    OlsResult r;
    r.n = n;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - (r.slope * x[i] + r.intercept);
        ss_res += e * e;
    }
    r.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    if (r.r_squared < 0.0) r.r_squared = 0.0;
    if (r.r_squared > 1.0) r.r_squared = 1.0;

    double dof = double(n) - 2.0;
    double sigma2 = ss_res / dof;
    if (sigma2 <= 0.0) {
        r.p_value = 0.0; // exact fit
    } else {
        double se = std::sqrt(sigma2 / sxx);
        r.p_value = student_t_two_sided_p(r.slope / se, dof);
    }
    return r;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw DataError("quantile of empty set");
    std::sort(values.begin(), values.end());
    if (q <= 0.0) return values.front();
    if (q >= 1.0) return values.back();
    double pos = q * double(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - double(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

} // namespace bikevol
