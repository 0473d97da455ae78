#include <cutvol/dilog.hpp>

#include <cmath>

namespace cutvol {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// Power series sum z^k / k^2, reliable for |z| <= 0.5.
std::complex<double> dilog_series(std::complex<double> z) {
    std::complex<double> term = z;
    std::complex<double> sum = z;
    for (int k = 2; k < 200; ++k) {
        term *= z;
        const std::complex<double> add = term / double(k * k);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// Even Bernoulli numbers B_2 .. B_32 as exact rationals.
constexpr double kBernoulli[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
};

// Debye-style expansion in u = -Log(1 - z):
//   Li2(z) = u - u^2/4 + sum_{k>=1} B_{2k} u^{2k+1} / (2k+1)!
// Converges for |u| < 2 pi; with |z| <= 1 and Re z <= 1/2 we have
// |u| <= ~1.4, so sixteen even Bernoulli terms reach full precision.
std::complex<double> dilog_log_series(std::complex<double> z) {
    const std::complex<double> u = -std::log(1.0 - z);
    const std::complex<double> u2 = u * u;
    std::complex<double> sum = u - 0.25 * u2;
    std::complex<double> upow = u;  // u^(2k+1) running power
    double fact = 1.0;              // (2k+1)! running factorial
    for (int k = 1; k <= 16; ++k) {
        upow *= u2;
        fact *= double(2 * k) * double(2 * k + 1);
        const std::complex<double> add = kBernoulli[k - 1] / fact * upow;
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

}  // namespace

std::complex<double> dilog(std::complex<double> z) {
    const double az = std::abs(z);
    if (az == 0.0) return {0.0, 0.0};

    // Inversion: map |z| > 1 into the closed unit disc.
    //   Li2(z) = -Li2(1/z) - pi^2/6 - Log(-z)^2 / 2
    if (az > 1.0) {
        const std::complex<double> lg = std::log(-z);
        return -dilog(1.0 / z) - kPi2Over6 - 0.5 * lg * lg;
    }

    // Reflection: move the half-disc nearest 1 next to 0.
    //   Li2(z) = pi^2/6 - Log(z) Log(1-z) - Li2(1-z)
    // For Re z > 1/2 the reflected argument has modulus <= 1 and real part
    // < 1/2, so the recursion terminates in one of the series branches.
    if (z.real() > 0.5) {
        const std::complex<double> w = 1.0 - z;
        if (std::abs(w) < 1e-300) return {kPi2Over6, 0.0};
        return kPi2Over6 - std::log(z) * std::log(w) - dilog(w);
    }

    if (az <= 0.5) return dilog_series(z);
    return dilog_log_series(z);
}

double dilog_real(double x) {
    return dilog(std::complex<double>(x, 0.0)).real();
}

double atan2_stable(double y, double x) {
    if (y == 0.0 && x == 0.0)
        throw BothZero("atan2 of (0, 0) is undefined");
    return std::atan2(y, x);
}

}  // namespace cutvol
