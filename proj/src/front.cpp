#include "finfront/front.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "finfront/geom2d.hpp"

namespace finfront {

namespace {

// Periodic chordal Catmull-Rom through a closed point loop.
struct ClosedSpline {
    std::vector<Vec2> pts;
    std::vector<double> knots; // knots[i] = arc parameter of pts[i]
    double total = 0.0;
    std::vector<Vec2> slopes; // dP/du at knots

    static ClosedSpline build(const std::vector<Vec2>& raw) {
        ClosedSpline sp;
        for (const Vec2& p : raw) {
            if (sp.pts.empty() || norm(p - sp.pts.back()) > 1e-14) sp.pts.push_back(p);
        }
        while (sp.pts.size() > 1 && norm(sp.pts.front() - sp.pts.back()) <= 1e-14)
            sp.pts.pop_back();
        const std::size_t n = sp.pts.size();
        if (n < 3) throw degenerate_front_error("front interpolation needs at least 3 distinct points");
        sp.knots.resize(n);
        sp.knots[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i)
            sp.knots[i] = sp.knots[i - 1] + norm(sp.pts[i] - sp.pts[i - 1]);
        sp.total = sp.knots[n - 1] + norm(sp.pts[0] - sp.pts[n - 1]);
        sp.slopes.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t prev = (i + n - 1) % n;
            const std::size_t next = (i + 1) % n;
            const double lp = norm(sp.pts[i] - sp.pts[prev]);
            const double ln = norm(sp.pts[next] - sp.pts[i]);
            sp.slopes[i] = (sp.pts[next] - sp.pts[prev]) / (lp + ln);
        }
        return sp;
    }

    // segment index and local parameter for arc value s (wrapped)
    void locate(double s, std::size_t& i, std::size_t& j, double& t, double& len) const {
        const std::size_t n = pts.size();
        s -= total * std::floor(s / total);
        auto it = std::upper_bound(knots.begin(), knots.end(), s);
        i = (it == knots.begin()) ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
        j = (i + 1) % n;
        const double u0 = knots[i];
        const double u1 = (j == 0) ? total : knots[j];
        len = u1 - u0;
        t = len > 0.0 ? (s - u0) / len : 0.0;
    }

    Vec2 eval(double s) const {
        std::size_t i, j;
        double t, len;
        locate(s, i, j, t, len);
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * pts[i] + ((t3 - 2 * t2 + t) * len) * slopes[i] +
               (-2 * t3 + 3 * t2) * pts[j] + ((t3 - t2) * len) * slopes[j];
    }

    Vec2 deriv(double s) const {
        std::size_t i, j;
        double t, len;
        locate(s, i, j, t, len);
        const double t2 = t * t;
        return ((6 * t2 - 6 * t) / len) * pts[i] + (3 * t2 - 4 * t + 1) * slopes[i] +
               ((-6 * t2 + 6 * t) / len) * pts[j] + (3 * t2 - 2 * t) * slopes[j];
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Parametrizations

FrontParametrization FrontParametrization::circle(Vec2 center, double radius) {
    if (!(radius > 0.0)) throw validation_error("circle front: radius must be positive");
    FrontParametrization fp;
    fp.position = [=](double th) -> Vec2 {
        return {center.x + radius * std::cos(th), center.y + radius * std::sin(th)};
    };
    fp.tangent = [=](double th) -> Vec2 {
        return {-radius * std::sin(th), radius * std::cos(th)};
    };
    fp.domain_begin = 0.0;
    fp.domain_end = 2.0 * M_PI;
    fp.orientation = +1;
    return fp;
}

FrontParametrization FrontParametrization::ellipse(Vec2 center, double semi_x, double semi_y,
                                                   double angle) {
    if (!(semi_x > 0.0) || !(semi_y > 0.0))
        throw validation_error("ellipse front: semi-axes must be positive");
    const double ca = std::cos(angle), sa = std::sin(angle);
    FrontParametrization fp;
    fp.position = [=](double th) -> Vec2 {
        const double px = semi_x * std::cos(th), py = semi_y * std::sin(th);
        return {center.x + ca * px - sa * py, center.y + sa * px + ca * py};
    };
    fp.tangent = [=](double th) -> Vec2 {
        const double px = -semi_x * std::sin(th), py = semi_y * std::cos(th);
        return {ca * px - sa * py, sa * px + ca * py};
    };
    fp.domain_begin = 0.0;
    fp.domain_end = 2.0 * M_PI;
    fp.orientation = +1;
    return fp;
}

FrontParametrization FrontParametrization::polar(std::function<double(double)> radius,
                                                 std::function<double(double)> dradius,
                                                 Vec2 center) {
    if (!radius) throw validation_error("polar front: radius function required");
    if (!dradius) {
        auto r = radius;
        dradius = [r](double th) { return (r(th + 1e-6) - r(th - 1e-6)) / 2e-6; };
    }
    FrontParametrization fp;
    fp.position = [=](double th) -> Vec2 {
        const double r = radius(th);
        return {center.x + r * std::cos(th), center.y + r * std::sin(th)};
    };
    fp.tangent = [=](double th) -> Vec2 {
        const double r = radius(th), dr = dradius(th);
        return {dr * std::cos(th) - r * std::sin(th), dr * std::sin(th) + r * std::cos(th)};
    };
    fp.domain_begin = 0.0;
    fp.domain_end = 2.0 * M_PI;
    fp.orientation = +1;
    return fp;
}

FrontParametrization FrontParametrization::from_points(const std::vector<Vec2>& points,
                                                       int orientation) {
    auto sp = std::make_shared<ClosedSpline>(ClosedSpline::build(points));
    FrontParametrization fp;
    fp.position = [sp](double s) { return sp->eval(s); };
    fp.tangent = [sp](double s) { return sp->deriv(s); };
    fp.domain_begin = 0.0;
    fp.domain_end = sp->total;
    fp.orientation = orientation >= 0 ? +1 : -1;
    return fp;
}

std::vector<double> sample_front(const FrontParametrization& fp, int m) {
    if (m < 3) throw validation_error("sample_front: need at least 3 samples on a closed front");
    const double span = fp.domain_end - fp.domain_begin;
    std::vector<double> thetas(m);
    for (int l = 0; l < m; ++l)
        thetas[l] = fp.domain_begin + span * static_cast<double>(l) / m;
    return thetas;
}

// ---------------------------------------------------------------------------
// Orthogonal launch

OrthogonalLaunch orthogonal_outward_velocity(const FinslerMetric& F, double t0,
                                             const FrontParametrization& fp, double theta) {
    const Vec2 alpha = fp.position(theta);
    const Vec2 tan_vec = fp.tangent(theta);
    const double tn = norm(tan_vec);
    if (!(tn > 1e-14)) {
        std::ostringstream os;
        os << "orthogonal launch: degenerate tangent at theta=" << theta;
        throw geometry_error(os.str());
    }
    const Vec2 that = tan_vec / tn;

    // phi(psi) = g_w(w, that) with w the F-unit vector in direction psi.
    auto phi = [&](double psi) {
        const Vec2 dir{std::cos(psi), std::sin(psi)};
        Vec2 w;
        SymMat2 g;
        try {
            w = F.indicatrix_point(t0, alpha, dir);
            g = F.fundamental_tensor(t0, alpha, w);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "orthogonality scan failed at theta=" << theta << ", psi=" << psi << ": "
               << e.what();
            throw geometry_error(os.str());
        }
        return g.quad(w, that);
    };

    constexpr int kGrid = 256;
    double values[kGrid];
    for (int j = 0; j < kGrid; ++j) values[j] = phi(2.0 * M_PI * j / kGrid);

    std::vector<double> roots;
    for (int j = 0; j < kGrid; ++j) {
        const double a = 2.0 * M_PI * j / kGrid;
        const double b = 2.0 * M_PI * (j + 1) / kGrid;
        const double fa = values[j];
        const double fb = values[(j + 1) % kGrid];
        if (fa == 0.0) {
            roots.push_back(a);
            continue;
        }
        if (fa * fb < 0.0) {
            double lo = a, hi = b, flo = fa;
            while (hi - lo > 1e-13) {
                const double mid = 0.5 * (lo + hi);
                const double fm = phi(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
    }

    if (roots.size() != 2) {
        std::ostringstream os;
        os << "orthogonal launch at theta=" << theta << ": found " << roots.size()
           << " F-orthogonal directions (expected 2); the indicatrix may not be strongly convex";
        throw geometry_error(os.str());
    }

    OrthogonalLaunch out;
    out.roots_found = static_cast<int>(roots.size());
    int picked = -1;
    double dets[2];
    Vec2 ws[2];
    for (int k = 0; k < 2; ++k) {
        const Vec2 dir{std::cos(roots[k]), std::sin(roots[k])};
        ws[k] = F.indicatrix_point(t0, alpha, dir);
        dets[k] = cross(ws[k], tan_vec);
        if (fp.orientation * dets[k] > 0.0) picked = k;
    }
    if (picked < 0 || dets[0] * dets[1] > 0.0) {
        std::ostringstream os;
        os << "orthogonal launch at theta=" << theta
           << ": both candidate directions lie on the same side of the front";
        throw geometry_error(os.str());
    }
    out.velocity = ws[picked];
    out.ortho_residual = std::fabs(F.fundamental_tensor(t0, alpha, out.velocity)
                                       .quad(out.velocity, that));
    out.f_residual = std::fabs(F.eval(t0, alpha, out.velocity) - 1.0);
    return out;
}

// ---------------------------------------------------------------------------
// Wavemap

Wavemap propagate(const FinslerMetric& F, const FrontParametrization& fp, double t0,
                  double tau, int m, const IntegratorConfig& cfg) {
    if (!(tau > t0)) throw validation_error("propagate: tau must exceed t0");
    Wavemap wm;
    wm.launch_time = t0;
    wm.final_time = tau;
    wm.thetas = sample_front(fp, m);
    wm.launch_points.reserve(m);
    wm.launch_velocities.reserve(m);
    wm.ortho_residuals.reserve(m);
    for (int l = 0; l < m; ++l) {
        try {
            const OrthogonalLaunch ol = orthogonal_outward_velocity(F, t0, fp, wm.thetas[l]);
            wm.launch_points.push_back(fp.position(wm.thetas[l]));
            wm.launch_velocities.push_back(ol.velocity);
            wm.ortho_residuals.push_back(ol.ortho_residual);
        } catch (const geometry_error& e) {
            std::ostringstream os;
            os << "launch index " << l << ": " << e.what();
            throw geometry_error(os.str());
        }
    }
    wm.trajectories = integrate_batch(F, wm.launch_points, wm.launch_velocities, t0, tau, cfg);
    return wm;
}

// ---------------------------------------------------------------------------
// Cut-point filter

namespace {

struct Crossing {
    double ta, tb;
};

struct PairKey {
    std::uint64_t v;
    bool operator==(const PairKey& o) const { return v == o.v; }
};
struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const { return std::hash<std::uint64_t>()(k.v); }
};

} // namespace

FilterResult filter_time_minimizing(const Wavemap& wm) {
    const auto& trs = wm.trajectories;
    const int m = static_cast<int>(trs.size());
    FilterResult res;
    if (m == 0) return res;
    const std::size_t nsamples = trs[0].size();
    for (const auto& tr : trs)
        if (tr.size() != nsamples)
            throw std::invalid_argument("filter_time_minimizing: trajectories must share sample times");
    if (nsamples < 2) throw std::invalid_argument("filter_time_minimizing: trajectories too short");
    const auto& times = trs[0].times;
    const double step = times[1] - times[0]; // tie threshold

    // Uniform hash grid over all polyline segments.
    const std::size_t nseg = nsamples - 1;
    double min_x = trs[0].positions[0].x, max_x = min_x;
    double min_y = trs[0].positions[0].y, max_y = min_y;
    std::vector<double> lengths;
    lengths.reserve(1024);
    const std::size_t stride = std::max<std::size_t>(1, (m * nseg) / 4096);
    std::size_t counter = 0;
    for (const auto& tr : trs)
        for (std::size_t k = 0; k < nseg; ++k) {
            const Vec2 a = tr.positions[k], b = tr.positions[k + 1];
            min_x = std::min({min_x, a.x, b.x});
            max_x = std::max({max_x, a.x, b.x});
            min_y = std::min({min_y, a.y, b.y});
            max_y = std::max({max_y, a.y, b.y});
            if (counter++ % stride == 0) lengths.push_back(norm(b - a));
        }
    std::nth_element(lengths.begin(), lengths.begin() + lengths.size() / 2, lengths.end());
    double cell = 4.0 * lengths[lengths.size() / 2];
    const double diag = std::hypot(max_x - min_x, max_y - min_y);
    if (!(cell > diag * 1e-9)) cell = std::max(diag / 256.0, 1e-12);

    auto cell_key = [&](long ix, long iy) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
               static_cast<std::uint32_t>(iy);
    };
    std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> grid;
    grid.reserve(static_cast<std::size_t>(m) * nseg);
    auto for_cells = [&](Vec2 a, Vec2 b, auto&& fn) {
        const long ix0 = static_cast<long>(std::floor(std::min(a.x, b.x) / cell));
        const long ix1 = static_cast<long>(std::floor(std::max(a.x, b.x) / cell));
        const long iy0 = static_cast<long>(std::floor(std::min(a.y, b.y) / cell));
        const long iy1 = static_cast<long>(std::floor(std::max(a.y, b.y) / cell));
        for (long ix = ix0; ix <= ix1; ++ix)
            for (long iy = iy0; iy <= iy1; ++iy) fn(cell_key(ix, iy));
    };
    for (int l = 0; l < m; ++l)
        for (std::size_t k = 0; k < nseg; ++k)
            for_cells(trs[l].positions[k], trs[l].positions[k + 1],
                      [&](std::uint64_t key) { grid[key].push_back({l, static_cast<int>(k)}); });

    // Crossings per unordered trajectory pair, deduplicated per segment pair.
    std::unordered_map<PairKey, std::vector<Crossing>, PairKeyHash> crossings;
    std::unordered_set<std::uint64_t> seen;
    auto seg_pair_id = [&](int la, int ka, int lb, int kb) {
        const std::uint64_t a = static_cast<std::uint64_t>(la) * nseg + ka;
        const std::uint64_t b = static_cast<std::uint64_t>(lb) * nseg + kb;
        return (a << 32) | b;
    };
    for (const auto& [key, segs] : grid) {
        (void)key;
        for (std::size_t i = 0; i < segs.size(); ++i)
            for (std::size_t j = i + 1; j < segs.size(); ++j) {
                int la = segs[i].first, ka = segs[i].second;
                int lb = segs[j].first, kb = segs[j].second;
                if (la == lb) continue;
                if (la > lb) {
                    std::swap(la, lb);
                    std::swap(ka, kb);
                }
                if (!seen.insert(seg_pair_id(la, ka, lb, kb)).second) continue;
                const auto hit = geom::segment_intersect(
                    trs[la].positions[ka], trs[la].positions[ka + 1], trs[lb].positions[kb],
                    trs[lb].positions[kb + 1]);
                if (!hit.hit) continue;
                const double ta = times[ka] + hit.u * (times[ka + 1] - times[ka]);
                const double tb = times[kb] + hit.w * (times[kb + 1] - times[kb]);
                crossings[PairKey{(static_cast<std::uint64_t>(la) << 32) |
                                  static_cast<std::uint64_t>(lb)}]
                    .push_back({ta, tb});
            }
    }

    // First crossing of each ordered pair, then the survival rule: arrive
    // strictly earlier (ties within one step keep both).
    std::vector<std::uint8_t> survives(m, 1);
    for (auto& [key, list] : crossings) {
        res.crossings_found += list.size();
        const int la = static_cast<int>(key.v >> 32);
        const int lb = static_cast<int>(key.v & 0xffffffffu);
        Crossing first_a = list[0], first_b = list[0];
        for (const Crossing& c : list) {
            if (c.ta < first_a.ta || (c.ta == first_a.ta && c.tb < first_a.tb)) first_a = c;
            if (c.tb < first_b.tb || (c.tb == first_b.tb && c.ta < first_b.ta)) first_b = c;
        }
        const bool a_ok = first_a.ta < first_a.tb || std::fabs(first_a.ta - first_a.tb) <= step;
        const bool b_ok = first_b.tb < first_b.ta || std::fabs(first_b.ta - first_b.tb) <= step;
        if (!a_ok) survives[la] = 0;
        if (!b_ok) survives[lb] = 0;
    }
    for (int l = 0; l < m; ++l)
        (survives[l] ? res.surviving : res.removed).push_back(l);
    return res;
}

// ---------------------------------------------------------------------------
// Front interpolation

Wavefront interpolate_front(const Wavemap& wm, const std::vector<int>& surviving,
                            double dispersion_limit) {
    Wavefront wf;
    wf.time = wm.final_time;
    std::vector<int> order(surviving);
    std::sort(order.begin(), order.end());
    if (order.size() < 3)
        throw degenerate_front_error("interpolate_front: fewer than 3 surviving endpoints");
    for (int l : order) {
        if (l < 0 || l >= static_cast<int>(wm.trajectories.size()))
            throw std::invalid_argument("interpolate_front: surviving index out of range");
        wf.points.push_back(wm.trajectories[l].end_position());
    }
    wf.surviving_indices = std::move(order);

    // default limit: 4x the median gap of the unfiltered endpoint loop
    if (!(dispersion_limit > 0.0)) {
        std::vector<double> gaps;
        const std::size_t m = wm.trajectories.size();
        gaps.reserve(m);
        for (std::size_t l = 0; l < m; ++l) {
            const Vec2 a = wm.trajectories[l].end_position();
            const Vec2 b = wm.trajectories[(l + 1) % m].end_position();
            gaps.push_back(norm(b - a));
        }
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        dispersion_limit = 4.0 * gaps[gaps.size() / 2];
    }
    wf.dispersion_limit = dispersion_limit;
    for (std::size_t i = 0; i < wf.points.size(); ++i) {
        const Vec2 a = wf.points[i];
        const Vec2 b = wf.points[(i + 1) % wf.points.size()];
        wf.max_gap = std::max(wf.max_gap, norm(b - a));
    }
    wf.dispersion_warning = wf.max_gap > dispersion_limit;
    return wf;
}

std::vector<Vec2> Wavefront::sample(std::size_t n) const {
    const ClosedSpline sp = ClosedSpline::build(points);
    std::vector<Vec2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(sp.eval(sp.total * static_cast<double>(i) / n));
    return out;
}

FrontParametrization Wavefront::as_parametrization(int orientation) const {
    return FrontParametrization::from_points(points, orientation);
}

// ---------------------------------------------------------------------------
// Epoch loop

std::vector<EpochResult> advance_epochs(const FinslerMetric& F,
                                        const FrontParametrization& fp0, double t0,
                                        int epochs, double tau_per_epoch,
                                        const PropagationOptions& opts) {
    if (epochs < 1) throw validation_error("advance_epochs: epochs must be >= 1");
    if (!(tau_per_epoch > 0.0))
        throw validation_error("advance_epochs: tau_per_epoch must be positive");
    std::vector<EpochResult> out;
    out.reserve(epochs);
    FrontParametrization fp = fp0;
    for (int e = 0; e < epochs; ++e) {
        const double te0 = t0 + e * tau_per_epoch;
        const double te1 = t0 + (e + 1) * tau_per_epoch;
        EpochResult er;
        er.wavemap = propagate(F, fp, te0, te1, opts.points, opts.integrator);
        er.filter = filter_time_minimizing(er.wavemap);
        if (opts.assert_no_intersections && er.filter.crossings_found > 0) {
            std::ostringstream os;
            os << "epoch " << e << ": " << er.filter.crossings_found
               << " trajectory intersections found but none were expected "
                  "(assert_no_intersections)";
            throw geometry_error(os.str());
        }
        try {
            er.front = interpolate_front(er.wavemap, er.filter.surviving, opts.dispersion_limit);
        } catch (const degenerate_front_error& ex) {
            std::ostringstream os;
            os << "epoch " << e << ": " << ex.what();
            throw degenerate_front_error(os.str());
        }
        fp = er.front.as_parametrization(fp.orientation);
        out.push_back(std::move(er));
    }
    return out;
}

} // namespace finfront
