#include "sharpgrad/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sharpgrad::quadrature {

QuadratureRule gauss_legendre_rule(int order)
{
    if (order < 1 || order > 512)
        throw std::domain_error("gauss_legendre_rule: order must be in [1, 512]");

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);

    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-angle estimate of the i-th root of P_order, then Newton
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_order(x) and P'_order(x)
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= order; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // roots come out in descending order; store ascending and mirror
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) {
        rule.nodes[order / 2] = 0.0;  // exact midpoint for odd orders
    }
    return rule;
}

namespace {

const QuadratureRule& rule16()
{
    static const QuadratureRule r = gauss_legendre_rule(16);
    return r;
}

const QuadratureRule& rule32()
{
    static const QuadratureRule r = gauss_legendre_rule(32);
    return r;
}

double apply_rule(const QuadratureRule& rule, const std::function<double(double)>& f,
                  double a, double b)
{
    const double mid = 0.5 * (a + b), halflen = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < rule.order; ++i)
        sum += rule.weights[i] * f(mid + halflen * rule.nodes[i]);
    return sum * halflen;
}

struct PanelState {
    const std::function<double(double)>* f = nullptr;
    double tol_per_length = 0.0;  // tol / total length
    int max_depth = 0;
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

void integrate_panel(PanelState& st, double a, double b, int depth)
{
    const double coarse = apply_rule(rule16(), *st.f, a, b);
    const double fine = apply_rule(rule32(), *st.f, a, b);
    st.evaluations += 48;
    const double err = std::abs(fine - coarse);
    if (err <= st.tol_per_length * (b - a) || depth >= st.max_depth) {
        st.value += fine;
        st.error += err;
        if (depth >= st.max_depth && err > st.tol_per_length * (b - a))
            st.converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    integrate_panel(st, a, mid, depth + 1);
    integrate_panel(st, mid, b, depth + 1);
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double tol,
                                    std::span<const double> breakpoints,
                                    int max_depth)
{
    if (!(a < b))
        throw std::domain_error("integrate_adaptive: require a < b");
    if (!(tol >= 0.0))
        throw std::domain_error("integrate_adaptive: require tol >= 0");

    std::vector<double> edges;
    edges.push_back(a);
    for (double c : breakpoints)
        if (c > a && c < b)
            edges.push_back(c);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    PanelState st;
    st.f = &f;
    st.tol_per_length = tol / (b - a);
    st.max_depth = max_depth;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        integrate_panel(st, edges[i], edges[i + 1], 0);

    QuadratureResult out;
    out.value = st.value;
    out.error_estimate = st.error;
    out.evaluations = st.evaluations;
    out.converged = st.converged;
    return out;
}

} // namespace sharpgrad::quadrature
