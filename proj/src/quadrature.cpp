#include "fpcavity/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace fpcav {

namespace {

// 15-point Kronrod abscissae; odd indices (1, 3, 5) and the centre carry the
// embedded 7-point Gauss rule.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error, floor;  // floor: rounding-limited part of error
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double scale = std::abs(half);
    resk *= half;
    resabs *= scale;
    resasc *= scale;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double floor = 50.0 * eps * resabs;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(floor, err);
    return {a, b, resk, err, floor};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const Tolerance& tol, int initial_panels) {
    tol.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: limits must be finite");
    if (a == b) return {0.0, 0.0, b, 0};
    initial_panels = std::clamp(initial_panels, 1, tol.max_subdivisions);

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    double total_floor = 0.0;
    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * width;
        Panel p = gauss_kronrod(f, lo, hi);
        total += p.value;
        total_err += p.error;
        total_floor += p.floor;
        heap.push(p);
    }

    int panels = initial_panels;
    // Stop when the tolerance is met, or when rounding accounts for at least
    // half of the error estimate and further bisection cannot help much.
    while (!tol.accepts(total_err, total) && total_err > 2.0 * total_floor) {
        if (panels >= tol.max_subdivisions) {
            throw ConvergenceError("integrate: tolerance not reached within max_subdivisions", total, total_err);
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw ConvergenceError("integrate: panel width reached machine resolution", total, total_err);
        }
        Panel left = gauss_kronrod(f, worst.a, mid);
        Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        ++panels;
        // Rebuild the running sums now and then to shed accumulated cancellation.
        if (panels % 256 == 0) {
            auto copy = heap;
            total = 0.0;
            total_err = 0.0;
            total_floor = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                total_floor += copy.top().floor;
                copy.pop();
            }
        }
    }
    return {total, total_err, b, panels};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_rate, const Tolerance& tol) {
    tol.validate();
    if (!(decay_rate > 0.0) || !std::isfinite(decay_rate))
        throw DomainError("integrate_semi_infinite: decay_rate must be > 0");

    // Tail beyond X is ~ |f(X)| / rate for an exponentially decaying integrand;
    // probe a few points so an oscillation node at X does not fool the estimate.
    auto tail_estimate = [&](double x) {
        const double step = 0.5 / decay_rate;
        double m = 0.0;
        for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(f(x + i * step / 4.0)));
        return m / decay_rate;
    };
    double upper = std::log(1.0 / tol.abs_tol) / decay_rate + 10.0;
    double tail = tail_estimate(upper);
    for (int i = 0; i < 60 && tail > 0.5 * tol.abs_tol; ++i) {
        upper += std::log(2.0) / decay_rate + 1.0;
        tail = tail_estimate(upper);
    }

    Tolerance inner = tol;
    inner.abs_tol = 0.5 * tol.abs_tol;
    const int panels = std::clamp(static_cast<int>(std::ceil(upper)), 1, std::max(1, tol.max_subdivisions / 2));
    QuadratureResult r;
    try {
        r = integrate(f, 0.0, upper, inner, panels);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what(), e.best_estimate(), e.achieved_error() + tail);
    }
    r.error += tail;
    r.upper_limit = upper;
    return r;
}

}  // namespace fpcav
