#include <cutvol/metrics.hpp>

#include <algorithm>
#include <cmath>

namespace cutvol {

double total_volume(const FractionField& f, double h) {
    double sum = 0.0;
    for (double a : f.alpha) sum += a;
    const double cell = f.dim == 3 ? h * h * h : h * h;
    return sum * cell;
}

FractionField aggregate_fine_to_coarse(const FractionField& fine,
                                       std::size_t factor) {
    if (factor == 0) throw NotDivisible("aggregation factor must be positive");
    const std::size_t fz = fine.dim == 3 ? factor : 1;
    if (fine.cx % factor != 0 || fine.cy % factor != 0 ||
        (fine.dim == 3 && fine.cz % factor != 0))
        throw NotDivisible("cell counts are not divisible by the factor");
    FractionField coarse;
    coarse.dim = fine.dim;
    coarse.cx = fine.cx / factor;
    coarse.cy = fine.cy / factor;
    coarse.cz = fine.dim == 3 ? fine.cz / factor : 1;
    coarse.alpha.assign(coarse.cell_count(), 0.0);
    const double inv = 1.0 / double(factor * factor * fz);
    for (std::size_t k = 0; k < coarse.cz; ++k)
        for (std::size_t j = 0; j < coarse.cy; ++j)
            for (std::size_t i = 0; i < coarse.cx; ++i) {
                double sum = 0.0;
                for (std::size_t dk = 0; dk < fz; ++dk)
                    for (std::size_t dj = 0; dj < factor; ++dj)
                        for (std::size_t di = 0; di < factor; ++di)
                            sum += fine.at(i * factor + di, j * factor + dj,
                                           k * fz + dk);
                coarse.at(i, j, k) = sum * inv;
            }
    return coarse;
}

ErrorNorms error_norms(const FractionField& base, const FractionField& test) {
    if (base.dim != test.dim || base.cx != test.cx || base.cy != test.cy ||
        base.cz != test.cz)
        throw ShapeMismatch("error norms need matching cell layouts");
    double sum_abs = 0.0, sum_sq = 0.0, max_abs = 0.0, denom = 0.0;
    for (std::size_t idx = 0; idx < base.alpha.size(); ++idx) {
        const double diff = test.alpha[idx] - base.alpha[idx];
        sum_abs += std::abs(diff);
        sum_sq += diff * diff;
        max_abs = std::max(max_abs, std::abs(diff));
        denom += test.alpha[idx];
    }
    if (denom == 0.0)
        throw DivideByZero("error norms need a nonzero reference mass");
    ErrorNorms n;
    n.l1 = sum_abs / denom;
    n.l2 = std::sqrt(sum_sq / denom);
    n.linf = max_abs;
    return n;
}

double fitted_order(const std::vector<double>& h,
                    const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 2)
        throw DegenerateFit("order fit needs two or more (h, err) samples");
    const std::size_t n = h.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(h[i] > 0.0) || !(err[i] > 0.0))
            throw DegenerateFit("order fit needs positive h and err");
        xs[i] = std::log(h[i]);
        ys[i] = std::log(err[i]);
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0)
        throw DegenerateFit("order fit needs at least two distinct h values");
    return sxy / sxx;
}

}  // namespace cutvol
