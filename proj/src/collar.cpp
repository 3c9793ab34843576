#include "plateau/collar.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace plateau {

namespace {

constexpr int kSegDistTableCap = 2048;

// Golden-section minimum of a unimodal (piecewise use: convex) function.
template <typename F>
double golden_min(F&& f, double lo, double hi, double* arg = nullptr) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    double best = std::min(f1, f2);
    double best_arg = f1 <= f2 ? x1 : x2;
    for (int it = 0; it < 90 && b - a > 1e-15 * (std::abs(a) + std::abs(b) + 1.0);
         ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        if (f1 < best) {
            best = f1;
            best_arg = x1;
        }
        if (f2 < best) {
            best = f2;
            best_arg = x2;
        }
    }
    const double flo = f(lo), fhi = f(hi);
    if (flo < best) {
        best = flo;
        best_arg = lo;
    }
    if (fhi < best) {
        best = fhi;
        best_arg = hi;
    }
    if (arg)
        *arg = best_arg;
    return best;
}

double point_segment_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b) {
    const Eigen::VectorXd d = b - a;
    const double dd = d.squaredNorm();
    double u = 0.0;
    if (dd > 0.0)
        u = std::clamp((x - a).dot(d) / dd, 0.0, 1.0);
    return (x - a - u * d).norm();
}

// Circular distance from point s to the arc interval [lo, hi] (hi - lo < l).
double interval_circle_distance(double s, double lo, double hi, double l) {
    double rel = std::fmod(s - lo, l);
    if (rel < 0.0)
        rel += l;
    const double lifted = lo + rel;
    if (lifted <= hi)
        return 0.0;
    return std::min(circle_distance(s, lo, l), circle_distance(s, hi, l));
}

// Splits [lo, hi] at circle antipodes of the given centers and golden-solves
// each convex piece of f.
template <typename F>
double min_over_interval(F&& f, double lo, double hi, double l,
                         std::initializer_list<double> centers,
                         double* arg = nullptr) {
    double cuts[8];
    int ncuts = 0;
    cuts[ncuts++] = lo;
    cuts[ncuts++] = hi;
    for (double c : centers) {
        const double anti = c + 0.5 * l;
        const double k = std::ceil((lo - anti) / l);
        for (double rep = anti + k * l; rep < hi; rep += l)
            if (rep > lo && ncuts < 8)
                cuts[ncuts++] = rep;
    }
    std::sort(cuts, cuts + ncuts);
    double best = std::numeric_limits<double>::infinity();
    double best_arg = lo;
    for (int k = 0; k + 1 < ncuts; ++k) {
        if (cuts[k + 1] - cuts[k] <= 0.0)
            continue;
        double piece_arg = cuts[k];
        const double v = golden_min(f, cuts[k], cuts[k + 1], &piece_arg);
        if (v < best) {
            best = v;
            best_arg = piece_arg;
        }
    }
    if (arg)
        *arg = best_arg;
    return best;
}

} // namespace

double circle_distance(double a, double b, double l) {
    double w = std::fmod(std::abs(a - b), l);
    return std::min(w, l - w);
}

CollarSpace::CollarSpace(ClosedCurve base, int seam_samples)
    : curve_(std::move(base)), seam_samples_(seam_samples) {
    if (!curve_.is_constant_speed())
        throw InvalidInput("collar space requires a constant-speed base curve");
    if (seam_samples_ < 64)
        throw ResolutionError("collar space needs seam_samples >= 64");
    l_ = curve_.param_length();

    const int m = curve_.size();
    grid_params_.resize(static_cast<std::size_t>(seam_samples_));
    grid_points_.resize(seam_samples_, curve_.dimension());
    for (int i = 0; i < seam_samples_; ++i) {
        grid_params_[i] = l_ * i / seam_samples_;
        grid_points_.row(i) = curve_.evaluate(grid_params_[i]).transpose();
    }

    vertex_arcs_.resize(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i)
        vertex_arcs_[i] = curve_.vertex_param(i);

    if (m <= kSegDistTableCap) {
        seg_dist_.resize(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                const double d = segment_segment_distance(
                    curve_.point(i), curve_.point((i + 1) % m),
                    curve_.point(j), curve_.point((j + 1) % m));
                seg_dist_(i, j) = d;
                seg_dist_(j, i) = d;
            }
        }
        seg_dist_rowmin_.resize(m);
        for (int i = 0; i < m; ++i)
            seg_dist_rowmin_[i] = seg_dist_.row(i).minCoeff();
    }

    for (const auto& hit : self_intersections(curve_, 1e-9 * l_)) {
        auto param_of = [&](int seg) {
            const Eigen::VectorXd a = curve_.point(seg);
            const Eigen::VectorXd d = curve_.point((seg + 1) % m) - a;
            const double dd = d.squaredNorm();
            const double u =
                dd > 0.0 ? std::clamp((hit.witness - a).dot(d) / dd, 0.0, 1.0) : 0.0;
            return vertex_arcs_[seg] + u * (vertex_arcs_[seg + 1] - vertex_arcs_[seg]);
        };
        crossing_params_.emplace_back(param_of(hit.seg_a), param_of(hit.seg_b));
    }

    bbox_lo_ = curve_.points().colwise().minCoeff().transpose();
    bbox_hi_ = curve_.points().colwise().maxCoeff().transpose();
}

CollarPoint CollarSpace::canonical(const CollarPoint& p) const {
    if (p.is_ambient()) {
        if (p.x.size() != curve_.dimension())
            throw InvalidInput("collar point dimension mismatch");
        return p;
    }
    if (!(p.t >= 0.0) || p.t > l_ * (1.0 + 1e-12))
        throw InvalidInput("collar point height out of [0, l]");
    double s = std::fmod(p.s, l_);
    if (s < 0.0)
        s += l_;
    if (p.t <= 1e-12 * l_)
        return CollarPoint::make_ambient(curve_.evaluate(s));
    return CollarPoint::make_collar(s, std::min(p.t, l_));
}

Eigen::VectorXd CollarSpace::retraction(const CollarPoint& p) const {
    const CollarPoint c = canonical(p);
    if (c.is_ambient())
        return c.x;
    return curve_.evaluate(c.s);
}

double CollarSpace::seam_objective(const Eigen::VectorXd& x, double p, double s,
                                   double t) const {
    return (x - curve_.evaluate(p)).norm() +
           std::hypot(circle_distance(p, s, l_), t);
}

// min over seam points of |x - gamma(p)| + d_Y((p,0),(s,t)). Complete sweep
// over the convex pieces of the objective, pruned by per-segment lower
// bounds, so the result is exact to solver precision.
double CollarSpace::gamma_min_route(const Eigen::VectorXd& x, double s,
                                    double t) const {
    const int m = curve_.size();
    double best = seam_objective(x, s, s, t);

    // seam-grid scan seeds the pruning bound
    for (int i = 0; i < seam_samples_; ++i) {
        const double cand =
            (x - grid_points_.row(i).transpose()).norm() +
            std::hypot(circle_distance(grid_params_[i], s, l_), t);
        best = std::min(best, cand);
    }

    std::vector<double> lb(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double amb = point_segment_distance(x, curve_.point(i),
                                                  curve_.point((i + 1) % m));
        const double cyl = std::hypot(
            interval_circle_distance(s, vertex_arcs_[i], vertex_arcs_[i + 1], l_), t);
        lb[i] = amb + cyl;
    }

    std::vector<int> order(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lb[a] < lb[b]; });

    auto f = [&](double p) { return seam_objective(x, p, s, t); };
    for (int i : order) {
        if (lb[i] >= best)
            break;
        best = std::min(best, min_over_interval(f, vertex_arcs_[i],
                                                vertex_arcs_[i + 1], l_, {s}));
    }
    return best;
}

// min over p, q of d_Y(a,(p,0)) + |gamma(p) - gamma(q)| + d_Y((q,0),b),
// bounded above by cap. Segment pairs are pruned through the precomputed
// segment-distance table; survivors are solved by alternating line minima
// over the convex pieces (axis and diagonal directions).
double CollarSpace::through_x_route(double s1, double t1, double s2, double t2,
                                    double cap) const {
    const int m = curve_.size();
    double best = cap;

    auto cyl1 = [&](double p) {
        return std::hypot(circle_distance(p, s1, l_), t1);
    };
    auto cyl2 = [&](double q) {
        return std::hypot(circle_distance(q, s2, l_), t2);
    };
    auto f2d = [&](double p, double q) {
        return cyl1(p) + (curve_.evaluate(p) - curve_.evaluate(q)).norm() + cyl2(q);
    };

    for (const auto& [pa, pb] : crossing_params_) {
        best = std::min(best, f2d(pa, pb));
        best = std::min(best, f2d(pb, pa));
    }

    std::vector<double> c1min(static_cast<std::size_t>(m)),
        c2min(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        c1min[i] = std::hypot(
            interval_circle_distance(s1, vertex_arcs_[i], vertex_arcs_[i + 1], l_), t1);
        c2min[i] = std::hypot(
            interval_circle_distance(s2, vertex_arcs_[i], vertex_arcs_[i + 1], l_), t2);
    }
    const double c2min_global = *std::min_element(c2min.begin(), c2min.end());

    // same-seam-point routes (p = q), pruned per segment
    auto fdiag = [&](double p) { return cyl1(p) + cyl2(p); };
    for (int i = 0; i < m; ++i) {
        if (c1min[i] + c2min[i] >= best)
            continue;
        best = std::min(best, min_over_interval(fdiag, vertex_arcs_[i],
                                                vertex_arcs_[i + 1], l_, {s1, s2}));
    }

    if (seg_dist_.size() == 0)
        return best; // no table: rely on crossings and the diagonal sweep

    auto refine_rect = [&](int i, int j) {
        const double plo = vertex_arcs_[i], phi = vertex_arcs_[i + 1];
        const double qlo = vertex_arcs_[j], qhi = vertex_arcs_[j + 1];
        double p = 0.5 * (plo + phi);
        double q = 0.5 * (qlo + qhi);
        double val = f2d(p, q);
        for (int round = 0; round < 6; ++round) {
            const double before = val;
            double arg = p;
            double v = min_over_interval([&](double pp) { return f2d(pp, q); },
                                         plo, phi, l_, {s1}, &arg);
            if (v < val) {
                val = v;
                p = arg;
            }
            v = min_over_interval([&](double qq) { return f2d(p, qq); }, qlo, qhi,
                                  l_, {s2}, &arg);
            if (v < val) {
                val = v;
                q = arg;
            }
            for (double dir : {1.0, -1.0}) {
                // diagonal (p + d, q + dir*d), clamped to the rectangle;
                // pieces split where either cylinder term crosses an antipode
                double lo = plo - p, hi = phi - p;
                if (dir > 0) {
                    lo = std::max(lo, qlo - q);
                    hi = std::min(hi, qhi - q);
                } else {
                    lo = std::max(lo, q - qhi);
                    hi = std::min(hi, q - qlo);
                }
                if (hi <= lo)
                    continue;
                // cyl1 kinks at d = s1 + l/2 - p, cyl2 at dir*(s2 + l/2 - q);
                // both map to antipodes of these centers in the d frame
                const double c1 = s1 - p;
                const double c2 = dir > 0 ? s2 - q : q - s2;
                v = min_over_interval(
                    [&](double d) { return f2d(p + d, q + dir * d); }, lo, hi,
                    l_, {c1, c2}, &arg);
                if (v < val) {
                    val = v;
                    p += arg;
                    q += dir * arg;
                }
            }
            if (before - val < 1e-15 * (1.0 + val))
                break;
        }
        best = std::min(best, val);
    };

    for (int i = 0; i < m; ++i) {
        if (c1min[i] + seg_dist_rowmin_[i] + c2min_global >= best)
            continue;
        for (int j = 0; j < m; ++j) {
            if (c1min[i] + seg_dist_(i, j) + c2min[j] < best)
                refine_rect(i, j);
        }
    }
    return best;
}

double CollarSpace::distance(const CollarPoint& a, const CollarPoint& b) const {
    CollarPoint ca = canonical(a);
    CollarPoint cb = canonical(b);

    // canonical argument order makes the evaluation exactly symmetric
    auto before = [](const CollarPoint& u, const CollarPoint& v) {
        if (u.is_ambient() != v.is_ambient())
            return u.is_ambient();
        if (u.is_ambient()) {
            for (int k = 0; k < u.x.size(); ++k)
                if (u.x[k] != v.x[k])
                    return u.x[k] < v.x[k];
            return false;
        }
        if (u.s != v.s)
            return u.s < v.s;
        return u.t < v.t;
    };
    if (before(cb, ca))
        std::swap(ca, cb);

    if (ca.is_ambient() && cb.is_ambient())
        return (ca.x - cb.x).norm();

    if (ca.is_ambient())
        return gamma_min_route(ca.x, cb.s, cb.t);

    const double direct =
        std::hypot(circle_distance(ca.s, cb.s, l_), ca.t - cb.t);
    if (direct <= ca.t + cb.t)
        return direct; // any route through R^n costs at least t_a + t_b
    return through_x_route(ca.s, ca.t, cb.s, cb.t, direct);
}

std::vector<CollarPoint> CollarSpace::gamma_l(int m) const {
    if (m < 3)
        throw InvalidInput("gamma_l needs m >= 3");
    std::vector<CollarPoint> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        out.push_back(CollarPoint::make_collar(l_ * i / m, l_));
    return out;
}

double CollarSpace::gamma_l_chord_arc(int m, long long pair_budget,
                                      std::uint64_t seed) const {
    const auto pts = gamma_l(m);
    double worst = 0.0;
    auto consider = [&](int i, int j) {
        const double arc = circle_distance(pts[i].s, pts[j].s, l_);
        const double chord = distance(pts[i], pts[j]);
        if (chord > 0.0)
            worst = std::max(worst, arc / chord);
    };
    if (static_cast<double>(m) * m <= static_cast<double>(pair_budget)) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                consider(i, j);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, m - 1);
        for (long long k = 0; k < pair_budget; ++k) {
            const int i = pick(rng);
            const int j = pick(rng);
            if (i != j)
                consider(i, j);
        }
    }
    return worst;
}

CollarPoint CollarSpace::sample_point(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double kind = uni(rng);
    if (kind < 0.4) {
        // ambient box point around the curve
        const Eigen::VectorXd span = bbox_hi_ - bbox_lo_;
        const double margin = 0.25 * (span.norm() + l_);
        Eigen::VectorXd x(curve_.dimension());
        for (int k = 0; k < x.size(); ++k)
            x[k] = bbox_lo_[k] - margin + (span[k] + 2.0 * margin) * uni(rng);
        return CollarPoint::make_ambient(std::move(x));
    }
    if (kind < 0.5)
        return CollarPoint::make_ambient(curve_.evaluate(l_ * uni(rng)));
    const double s = l_ * uni(rng);
    const double t = l_ * uni(rng);
    return CollarPoint::make_collar(s, t);
}

MetricAxiomReport CollarSpace::verify_metric_axioms(int trials,
                                                    std::uint64_t seed) const {
    if (trials < 1)
        throw InvalidInput("verify_metric_axioms needs trials >= 1");
    MetricAxiomReport rep;
    rep.trials = trials;
    rep.slack = 1e-6 * l_;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < trials; ++k) {
        const CollarPoint a = sample_point(rng);
        const CollarPoint b = sample_point(rng);
        const CollarPoint c = sample_point(rng);
        const double dab = distance(a, b);
        const double dba = distance(b, a);
        if (dab != dba)
            ++rep.symmetry_violations;
        const double dbc = distance(b, c);
        const double dac = distance(a, c);
        const double violation = dac - (dab + dbc);
        rep.worst_triangle_violation = std::max(rep.worst_triangle_violation, violation);
        if (violation > rep.slack)
            ++rep.triangle_violations;
        if (distance(a, a) != 0.0)
            ++rep.indiscernibility_violations;
        if (a.is_ambient() && b.is_ambient() &&
            dab != (a.x - b.x).norm())
            ++rep.ambient_isometry_violations;
    }
    return rep;
}

LipschitzReport CollarSpace::retraction_lipschitz(int trials,
                                                  std::uint64_t seed) const {
    LipschitzReport rep;
    rep.trials = trials;
    rep.slack = 1e-6 * l_;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < trials; ++k) {
        const CollarPoint a = sample_point(rng);
        const CollarPoint b = sample_point(rng);
        const double excess =
            (retraction(a) - retraction(b)).norm() - distance(a, b);
        rep.worst_excess = std::max(rep.worst_excess, excess);
        if (excess > rep.slack)
            ++rep.violations;
    }
    return rep;
}

} // namespace plateau
