#include "plateau/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace plateau {

namespace {

bool all_finite(const Eigen::MatrixXd& m) {
    return m.allFinite();
}

} // namespace

ClosedCurve::ClosedCurve(Eigen::MatrixXd points, std::vector<double> params,
                         double param_length, std::string name)
    : points_(std::move(points)),
      params_(std::move(params)),
      param_length_(param_length),
      name_(std::move(name)) {
    const int m = size();
    if (m < 3)
        throw InvalidInput("closed curve needs at least 3 points");
    if (dimension() < 1)
        throw InvalidInput("closed curve needs dimension >= 1");
    if (!all_finite(points_))
        throw InvalidInput("closed curve has non-finite coordinates");
    if (static_cast<int>(params_.size()) != m)
        throw InvalidInput("closed curve params size must match point count");
    if (!std::isfinite(param_length_) || param_length_ <= 0.0)
        throw InvalidInput("closed curve param_length must be positive and finite");
    for (int i = 0; i < m; ++i) {
        if (!std::isfinite(params_[i]))
            throw InvalidInput("closed curve params must be finite");
        if (params_[i] < 0.0 || params_[i] >= param_length_)
            throw InvalidInput("closed curve params must lie in [0, param_length)");
        if (i > 0 && params_[i] <= params_[i - 1])
            throw InvalidInput("closed curve params must be strictly increasing");
    }

    seg_lengths_.resize(m);
    total_length_ = 0.0;
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        seg_lengths_[i] = (points_.row(j) - points_.row(i)).norm();
        total_length_ += seg_lengths_[i];
    }
    if (!(total_length_ > 0.0) || !std::isfinite(total_length_))
        throw InvalidInput("closed curve must have positive finite length");

    // Constant speed iff parameter gaps are proportional to chord lengths.
    constant_speed_ = true;
    for (int i = 0; i < m && constant_speed_; ++i) {
        const double gap = vertex_param(i + 1) - vertex_param(i);
        const double share_p = gap / param_length_;
        const double share_l = seg_lengths_[i] / total_length_;
        if (std::abs(share_p - share_l) >
            1e-9 * std::max(share_p, share_l) + 1e-15)
            constant_speed_ = false;
    }
}

ClosedCurve ClosedCurve::from_points(Eigen::MatrixXd points, std::string name) {
    const int m = static_cast<int>(points.rows());
    if (m < 3)
        throw InvalidInput("closed curve needs at least 3 points");
    std::vector<double> params(m, 0.0);
    double acc = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        acc += (points.row(i + 1) - points.row(i)).norm();
        params[i + 1] = acc;
    }
    acc += (points.row(0) - points.row(m - 1)).norm();
    if (!(acc > 0.0))
        throw InvalidInput("closed curve must have positive length");
    return ClosedCurve(std::move(points), std::move(params), acc, std::move(name));
}

double ClosedCurve::segment_length(int i) const {
    return seg_lengths_[static_cast<std::size_t>(i)];
}

double ClosedCurve::vertex_param(int i) const {
    const int m = size();
    if (i < m)
        return params_[static_cast<std::size_t>(i)];
    return params_[static_cast<std::size_t>(i - m)] + param_length_;
}

Eigen::VectorXd ClosedCurve::evaluate(double t) const {
    const int m = size();
    double s = std::fmod(t, param_length_);
    if (s < 0.0)
        s += param_length_;
    if (s < params_[0] || s >= params_[m - 1]) {
        // closing segment m-1 -> 0
        const double gap = param_length_ - params_[m - 1] + params_[0];
        double off = s - params_[m - 1];
        if (s < params_[0])
            off += param_length_;
        const double u = off / gap;
        return (points_.row(m - 1) * (1.0 - u) + points_.row(0) * u).transpose();
    }
    const auto it = std::upper_bound(params_.begin(), params_.end(), s);
    const int i = static_cast<int>(it - params_.begin()) - 1;
    const double gap = params_[i + 1] - params_[i];
    const double u = (s - params_[i]) / gap;
    if (u == 0.0)
        return points_.row(i).transpose();
    return (points_.row(i) * (1.0 - u) + points_.row(i + 1) * u).transpose();
}

double curve_length(const ClosedCurve& c) {
    double acc = 0.0;
    for (int i = 0; i < c.size(); ++i)
        acc += c.segment_length(i);
    return acc;
}

ClosedCurve constant_speed_reparam(const ClosedCurve& c, int m_out) {
    if (m_out < 3)
        throw InvalidInput("constant_speed_reparam needs m_out >= 3");
    const int m = c.size();

    // Arc positions of the vertices relative to vertex 0. For constant-speed
    // inputs the params are the arc measure, which makes resampling at the
    // same resolution reproduce the vertices bit for bit.
    std::vector<double> pos(static_cast<std::size_t>(m) + 1, 0.0);
    if (c.is_constant_speed()) {
        for (int i = 0; i <= m; ++i)
            pos[i] = c.vertex_param(i) - c.vertex_param(0);
    } else {
        for (int i = 0; i < m; ++i)
            pos[i + 1] = pos[i] + c.segment_length(i);
    }
    const double total = pos[m];
    if (!(total > 0.0) || !std::isfinite(total))
        throw InvalidInput("degenerate curve");

    Eigen::MatrixXd out(m_out, c.dimension());
    std::vector<double> params(m_out, 0.0);
    for (int j = 0; j < m_out; ++j) {
        const double a = static_cast<double>(j) * total / static_cast<double>(m_out);
        params[j] = a;
        auto it = std::upper_bound(pos.begin(), pos.end(), a);
        int i = static_cast<int>(it - pos.begin()) - 1;
        i = std::min(i, m - 1);
        const double gap = pos[i + 1] - pos[i];
        const double u = gap > 0.0 ? (a - pos[i]) / gap : 0.0;
        const int i1 = (i + 1) % m;
        if (u == 0.0)
            out.row(j) = c.points().row(i);
        else
            out.row(j) = c.points().row(i) * (1.0 - u) + c.points().row(i1) * u;
    }
    ClosedCurve r(std::move(out), std::move(params), total, c.name());
    r.constant_speed_ = true;
    return r;
}

double chord_arc_constant(const ClosedCurve& c, long long pair_budget,
                          std::uint64_t seed) {
    if (!c.is_constant_speed())
        throw InvalidInput("chord_arc_constant requires a constant-speed curve");
    const int m = c.size();
    const double L = c.param_length();
    const double len = curve_length(c);
    const double chord_floor = 1e-12 * len;
    const double arc_floor = 1e-3 * L;

    double worst = 0.0;
    bool unbounded = false;
    auto consider = [&](int i, int j) {
        double dp = std::abs(c.params()[i] - c.params()[j]);
        dp = std::min(dp, L - dp);
        const double arc = dp * (len / L);
        const double chord = (c.points().row(i) - c.points().row(j)).norm();
        if (chord < chord_floor) {
            if (dp >= arc_floor)
                unbounded = true;
            return; // coincident or near-coincident samples: no finite ratio
        }
        worst = std::max(worst, arc / chord);
    };

    const double all = static_cast<double>(m) * static_cast<double>(m);
    if (all <= static_cast<double>(pair_budget)) {
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
                consider(std::min(i, j), std::max(i, j));
        }
    }
    return unbounded ? kUnbounded : worst;
}

double segment_segment_distance(const Eigen::VectorXd& a0, const Eigen::VectorXd& a1,
                                const Eigen::VectorXd& b0, const Eigen::VectorXd& b1,
                                Eigen::VectorXd* witness) {
    const Eigen::VectorXd u = a1 - a0;
    const Eigen::VectorXd v = b1 - b0;
    const Eigen::VectorXd w = a0 - b0;
    const double a = u.dot(u);
    const double b = u.dot(v);
    const double cc = v.dot(v);
    const double d = u.dot(w);
    const double e = v.dot(w);

    auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
    double best = std::numeric_limits<double>::infinity();
    double bs = 0.0, bt = 0.0;
    auto consider = [&](double s, double t) {
        s = clamp01(s);
        t = clamp01(t);
        const double dist = (w + s * u - t * v).norm();
        if (dist < best) {
            best = dist;
            bs = s;
            bt = t;
        }
    };

    const double denom = a * cc - b * b;
    if (denom > 0.0)
        consider((b * e - cc * d) / denom, (a * e - b * d) / denom);
    if (cc > 0.0) {
        consider(0.0, e / cc);
        consider(1.0, (e + b) / cc);
    } else {
        consider(0.0, 0.0);
        consider(1.0, 0.0);
    }
    if (a > 0.0) {
        consider(-d / a, 0.0);
        consider((b - d) / a, 1.0);
    } else {
        consider(0.0, 0.0);
        consider(0.0, 1.0);
    }

    if (witness)
        *witness = 0.5 * ((a0 + bs * u) + (b0 + bt * v));
    return best;
}

std::vector<SegmentPairHit> self_intersections(const ClosedCurve& c, double tol) {
    if (tol < 0.0)
        throw InvalidInput("self_intersections needs tol >= 0");
    const int m = c.size();
    std::vector<SegmentPairHit> hits;
    for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd a0 = c.point(i);
        const Eigen::VectorXd a1 = c.point((i + 1) % m);
        for (int j = i + 1; j < m; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            if (adjacent)
                continue;
            Eigen::VectorXd w;
            const double dist = segment_segment_distance(
                a0, a1, c.point(j), c.point((j + 1) % m), &w);
            if (dist <= tol)
                hits.push_back({i, j, std::move(w), dist});
        }
    }
    return hits;
}

std::vector<Eigen::VectorXd> self_intersection_sites(const ClosedCurve& c,
                                                     double tol, double site_tol) {
    std::vector<Eigen::VectorXd> sites;
    for (const auto& h : self_intersections(c, tol)) {
        bool found = false;
        for (const auto& s : sites) {
            if ((s - h.witness).norm() <= site_tol) {
                found = true;
                break;
            }
        }
        if (!found)
            sites.push_back(h.witness);
    }
    return sites;
}

std::vector<double> lift_monotone_profile(std::span<const double> values, double length) {
    if (values.empty())
        throw InvalidInput("empty parameter profile");
    if (!(length > 0.0))
        throw InvalidInput("profile length must be positive");
    std::vector<double> out(values.size());
    out[0] = values[0];
    for (std::size_t j = 1; j < values.size(); ++j) {
        const double k = std::ceil((out[j - 1] - values[j]) / length);
        out[j] = std::max(values[j] + k * length, out[j - 1]);
    }
    if (out.back() - out.front() > length)
        throw InvalidInput("profile is not weakly monotone with winding number 1");
    return out;
}

// ---------------------------------------------------------------------------
// JSON I/O
// ---------------------------------------------------------------------------

ClosedCurve ClosedCurve::from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw InvalidInput("curve JSON: top level must be an object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
        j["dimension"].get<long long>() < 1)
        throw InvalidInput("curve JSON: \"dimension\" must be a positive integer");
    const int n = j["dimension"].get<int>();

    if (!j.contains("points") || !j["points"].is_array())
        throw InvalidInput("curve JSON: \"points\" must be an array of arrays");
    const auto& pts = j["points"];
    const int m = static_cast<int>(pts.size());
    if (m < 3)
        throw InvalidInput("curve JSON: \"points\" must hold at least 3 points");
    Eigen::MatrixXd points(m, n);
    for (int i = 0; i < m; ++i) {
        const auto& row = pts[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InvalidInput("curve JSON: \"points\" row " + std::to_string(i) +
                               " must hold exactly " + std::to_string(n) + " numbers");
        for (int k = 0; k < n; ++k) {
            if (!row[k].is_number())
                throw InvalidInput("curve JSON: \"points\" row " + std::to_string(i) +
                                   " has a non-numeric entry");
            const double v = row[k].get<double>();
            if (!std::isfinite(v))
                throw InvalidInput("curve JSON: \"points\" row " + std::to_string(i) +
                                   " has a non-finite entry");
            points(i, k) = v;
        }
    }

    std::string name;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw InvalidInput("curve JSON: \"name\" must be a string");
        name = j["name"].get<std::string>();
    }

    if (!j.contains("params"))
        return from_points(std::move(points), std::move(name));

    const auto& pj = j["params"];
    if (!pj.is_array() || static_cast<int>(pj.size()) != m)
        throw InvalidInput("curve JSON: \"params\" must be an array of " +
                           std::to_string(m) + " numbers");
    std::vector<double> params(m);
    for (int i = 0; i < m; ++i) {
        if (!pj[i].is_number())
            throw InvalidInput("curve JSON: \"params\" entry " + std::to_string(i) +
                               " is not a number");
        params[i] = pj[i].get<double>();
        if (!std::isfinite(params[i]))
            throw InvalidInput("curve JSON: \"params\" entry " + std::to_string(i) +
                               " is not finite");
    }

    double L = 0.0;
    if (j.contains("param_length")) {
        if (!j["param_length"].is_number())
            throw InvalidInput("curve JSON: \"param_length\" must be a number");
        L = j["param_length"].get<double>();
    } else {
        // Infer the closing parameter gap from the closing chord, scaled like
        // the provided parameter span per unit of chord length.
        double cum = 0.0;
        for (int i = 0; i + 1 < m; ++i)
            cum += (points.row(i + 1) - points.row(i)).norm();
        const double closing = (points.row(0) - points.row(m - 1)).norm();
        const double span = params[m - 1] - params[0];
        const double scale = cum > 0.0 ? span / cum : 1.0;
        L = params[m - 1] + closing * scale;
    }
    if (!(L > params[m - 1]))
        throw InvalidInput("curve JSON: \"param_length\" must exceed the last param");
    return ClosedCurve(std::move(points), std::move(params), L, std::move(name));
}

ClosedCurve ClosedCurve::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open curve file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput("curve JSON parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

nlohmann::ordered_json ClosedCurve::to_json() const {
    nlohmann::ordered_json j;
    j["dimension"] = dimension();
    if (!name_.empty())
        j["name"] = name_;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (int i = 0; i < size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < dimension(); ++k)
            row.push_back(points_(i, k));
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    j["params"] = params_;
    j["param_length"] = param_length_;
    return j;
}

} // namespace plateau
