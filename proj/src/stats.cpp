#include "dikmc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dikmc {

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(i / n - f));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample: empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    return d;
}

double ks_two_sample_critical(std::size_t m, std::size_t n, double coeff) {
    return coeff * std::sqrt(static_cast<double>(m + n) /
                             (static_cast<double>(m) * static_cast<double>(n)));
}

double chi_square_uniform(const std::vector<long>& counts) {
    if (counts.empty()) throw std::invalid_argument("chi_square_uniform: empty");
    long total = 0;
    for (long c : counts) total += c;
    const double expected = static_cast<double>(total) / counts.size();
    if (!(expected > 0.0)) {
        throw std::invalid_argument("chi_square_uniform: no observations");
    }
    double stat = 0.0;
    for (long c : counts) {
        const double d = c - expected;
        stat += d * d / expected;
    }
    return stat;
}

double gamma_q(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0)) {
        throw std::domain_error("gamma_q: requires s > 0, x >= 0");
    }
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(s);
    if (x < s + 1.0) {
        // Lower series P(s,x), return 1 - P.
        double term = 1.0 / s;
        double sum = term;
        double a = s;
        for (int k = 0; k < 500; ++k) {
            a += 1.0;
            term *= x / a;
            sum += term;
            if (term < sum * 1e-16) break;
        }
        return 1.0 - sum * std::exp(-x + s * std::log(x) - lg);
    }
    // Continued fraction for Q(s,x) (modified Lentz).
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x) - lg);
}

double chi_square_critical(int df, double upper_tail_prob) {
    if (df < 1 || !(upper_tail_prob > 0.0 && upper_tail_prob < 1.0)) {
        throw std::domain_error("chi_square_critical: df >= 1, prob in (0,1)");
    }
    const double s = df / 2.0;
    double lo = 0.0, hi = df + 10.0;
    while (gamma_q(s, hi / 2.0) > upper_tail_prob) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_q(s, mid / 2.0) > upper_tail_prob) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("r_squared: size mismatch");
    }
    if (x.size() < 2) return 0.0;
    const double r = pearson_corr(x, y);
    return r * r;
}

double pearson_corr(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("pearson_corr: needs two same-length samples");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

double quantile(std::vector<double> samples, double q) {
    if (samples.empty()) throw std::invalid_argument("quantile: empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile: q in [0,1]");
    std::sort(samples.begin(), samples.end());
    const double pos = q * (samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= samples.size()) return samples.back();
    const double w = pos - lo;
    return samples[lo] + w * (samples[lo + 1] - samples[lo]);
}

double median(std::vector<double> samples) {
    return quantile(std::move(samples), 0.5);
}

} // namespace dikmc
