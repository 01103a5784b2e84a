#include "e2/covering.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace e2 {

namespace {

long mod(long x, long n) {
    long r = x % n;
    return r < 0 ? r + n : r;
}

long mod(const Integer& x, long n) {
    Integer r = x % n;
    if (r < 0) r += n;
    return r.get_si();
}

FieldElement power(const FieldElement& base, long e) {
    FieldElement result = FieldElement::from_integer(1, base.radicand());
    FieldElement b = base;
    while (e > 0) {
        if (e & 1) result = result * b;
        b = b * b;
        e >>= 1;
    }
    return result;
}

/// v1 and v2 of a + b*omega for rational a, b.
Point2 embed_coords(const QuadField& F, const Rational& a, const Rational& b) {
    return embed(F.element(a, b));
}

bool strip_meets(const Point2& c, const Rational& u, const Box& R0) {
    bool in_x = !(c.x < R0.x0 - u) && !(R0.x1 + u < c.x);
    bool in_y = !(c.y < R0.y0 - u) && !(R0.y1 + u < c.y);
    return in_x || in_y;
}

struct Cand {
    std::uint32_t cls;
    std::int32_t t;
    long d;
    long n;
    double x0;
    double y0;
    double inv;
};

bool key_less(const Cand& a, const Cand& b) {
    return std::tuple(a.n, std::labs(a.t), a.t, a.d, a.cls) < std::tuple(b.n, std::labs(b.t), b.t, b.d, b.cls);
}

struct FBox {
    double x0, x1, y0, y1;
};

double gap(double c, double lo, double hi) {
    if (c < lo) return lo - c;
    if (c > hi) return c - hi;
    return 0.0;
}

/// Conservative: false only when the open region certainly misses the box.
bool may_hit(const Cand& c, const FBox& b) {
    double dx = gap(c.x0, b.x0, b.x1);
    double dy = gap(c.y0, b.y0, b.y1);
    return dx * dy < c.inv * (1 + 1e-9) + 1e-12 * (1 + dx + dy);
}

/// Conservative: false only when the region certainly does not contain the box.
bool may_contain(const Cand& c, const FBox& b) {
    double dx = std::max(std::fabs(b.x0 - c.x0), std::fabs(b.x1 - c.x0));
    double dy = std::max(std::fabs(b.y0 - c.y0), std::fabs(b.y1 - c.y0));
    return dx * dy < c.inv * (1 + 1e-9) + 1e-12 * (1 + dx + dy);
}

constexpr double slack = 1e-9;

}  // namespace

// ---------------------------------------------------------------- classes

ClassTable::ClassTable(const QuadField& F) : F_(&F), norm_end_{0} {}

void ClassTable::extend_to(long N) {
    if (N <= bound_) return;
    const QuadField& F = *F_;
    FieldElement eps_inv = F.fundamental_unit.conj() * Rational(F.unit_norm);
    const long w0 = F.omega_sq_constant();
    const long w1 = F.omega_sq_linear();

    for (long n = bound_ + 1; n <= N; ++n) {
        std::map<std::pair<long, long>, Rec> level;
        long u0 = mod(eps_inv.a().numerator(), n);
        long u1 = mod(eps_inv.b().numerator(), n);
        for (const IdealGen& ig : ideals_of_norm(F, n)) {
            const FieldElement& alpha = ig.generator;
            int s = alpha.norm().sign();
            FieldElement c = alpha.conj();
            long A0 = mod(c.a().numerator() * s, n);
            long B0 = mod(c.b().numerator() * s, n);

            std::vector<std::pair<long, long>> orbit;
            long A = A0;
            long B = B0;
            do {
                orbit.emplace_back(A, B);
                long bu1 = B * u1 % n;
                long nA = (A * u0 + bu1 * w0) % n;
                long nB = (A * u1 + B * u0 + bu1 * w1) % n;
                A = nA;
                B = nB;
            } while (A != A0 || B != B0);

            auto ideal = static_cast<std::uint32_t>(ideals_.size());
            ideals_.push_back(alpha);
            long L = static_cast<long>(orbit.size());
            auto rank = [](long k, int sign) { return std::tuple(std::labs(k), k < 0, sign < 0); };
            for (long j = 0; j < L; ++j) {
                for (int sign : {1, -1}) {
                    long a = sign > 0 ? orbit[j].first : mod(-orbit[j].first, n);
                    long b = sign > 0 ? orbit[j].second : mod(-orbit[j].second, n);
                    for (long k : {j, j - L}) {
                        auto it = level.find({a, b});
                        if (it == level.end()) {
                            level.emplace(std::pair(a, b), Rec{n, a, b, ideal, k, sign});
                        } else if (it->second.ideal == ideal && rank(k, sign) < rank(it->second.k, it->second.sign)) {
                            it->second.k = k;
                            it->second.sign = sign;
                        }
                    }
                }
            }
        }
        for (auto& [key, rec] : level) recs_.push_back(rec);
        norm_end_.push_back(recs_.size());
    }
    bound_ = N;
}

std::size_t ClassTable::count_up_to(long N) const {
    if (N <= 0) return 0;
    if (N >= bound_) return recs_.size();
    return norm_end_[N];
}

FieldElement ClassTable::witness(std::size_t i) const {
    const Rec& r = recs_[i];
    const QuadField& F = *F_;
    FieldElement unit = r.k >= 0 ? power(F.fundamental_unit, r.k)
                                 : power(F.fundamental_unit.conj() * Rational(F.unit_norm), -r.k);
    return unit * ideals_[r.ideal] * Rational(r.sign);
}

CenterClass ClassTable::center_class(std::size_t i) const {
    const Rec& r = recs_[i];
    return {Rational(Integer(r.A), Integer(r.n)), Rational(Integer(r.B), Integer(r.n)), witness(i), r.n};
}

std::vector<CenterClass> compute_QN(const QuadField& F, long N) {
    ClassTable table(F);
    table.extend_to(N);
    std::vector<CenterClass> out;
    out.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) out.push_back(table.center_class(i));
    return out;
}

Rational strip_half_width(long n) {
    if (n <= 0) throw std::invalid_argument("strip_half_width needs n >= 1");
    // least k with k^2 n >= 4096
    long k = static_cast<long>(std::ceil(64.0 / std::sqrt(static_cast<double>(n))));
    while (k > 0 && (k - 1) * (k - 1) * n >= 4096) --k;
    while (k * k * n < 4096) ++k;
    return Rational(Integer(k), Integer(64));
}

std::vector<Region> expand_translates(const QuadField& F, const std::vector<CenterClass>& classes, long T, long N,
                                      const Box& R0) {
    struct Item {
        long n;
        long t;
        long d;
        std::size_t cls;
    };
    std::vector<Item> items;
    const double X0 = R0.x0.approx(), X1 = R0.x1.approx(), Y0 = R0.y0.approx(), Y1 = R0.y1.approx();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const CenterClass& c = classes[i];
        if (c.n > N) continue;
        Rational u = strip_half_width(c.n);
        double uf = u.to_double();
        long tlo = (Rational(-T) - c.b_mod1).floor().get_si();
        long thi = (Rational(T) - c.b_mod1).floor().get_si() + 1;
        for (long t = tlo; t <= thi; ++t) {
            Rational b = c.b_mod1 + Rational(t);
            if (!(b.abs() < Rational(T))) continue;
            Point2 base = embed_coords(F, c.a_mod1, b);
            double X = base.x.approx(), Y = base.y.approx();
            long dx_lo = static_cast<long>(std::floor(X0 - uf - X)) - 1;
            long dx_hi = static_cast<long>(std::ceil(X1 + uf - X)) + 1;
            long dy_lo = static_cast<long>(std::floor(Y0 - uf - Y)) - 1;
            long dy_hi = static_cast<long>(std::ceil(Y1 + uf - Y)) + 1;
            auto consider = [&](long d) {
                Point2 p{base.x + Rational(d), base.y + Rational(d)};
                if (strip_meets(p, u, R0)) items.push_back({c.n, t, d, i});
            };
            for (long d = dx_lo; d <= dx_hi; ++d) consider(d);
            for (long d = dy_lo; d <= dy_hi; ++d)
                if (d < dx_lo || d > dx_hi) consider(d);
        }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return std::tuple(a.n, std::labs(a.t), a.t, a.d, a.cls) < std::tuple(b.n, std::labs(b.t), b.t, b.d, b.cls);
    });
    std::vector<Region> out;
    out.reserve(items.size());
    for (const Item& it : items) {
        const CenterClass& c = classes[it.cls];
        FieldElement center = F.element(c.a_mod1 + Rational(it.d), c.b_mod1 + Rational(it.t));
        out.emplace_back(center, c.q2);
    }
    return out;
}

std::pair<long, long> schedule_at(const Schedule& s, int depth) {
    return {s.t0 + depth / 2, s.n0 * (1 + depth * s.cn)};
}

// ---------------------------------------------------------------- engine

/// Per-depth candidate machinery. The pool at depth d is Q_{T(d),N(d)};
/// a box's candidates are the parent's candidates that still come near it
/// plus the translates new at this depth, found through sorted indices on
/// the fractional parts of their v1 and v2 coordinates.
class SearchEngine {
public:
    SearchEngine(const QuadField& F, const Schedule& s)
        : F_(F), schedule_(s), classes_(F), R0_(fundamental_box(F)) {
        double r = std::sqrt(static_cast<double>(F.m));
        if (F.omega_kind == OmegaKind::half) {
            w1_ = (1 + r) / 2;
            w2_ = (1 - r) / 2;
        } else {
            w1_ = r;
            w2_ = -r;
        }
    }

    ClassTable& classes() { return classes_; }

    struct Entry {
        std::uint32_t cls;
        std::int32_t t;
        long n;
        double X, Y, u, inv;
    };
    struct Delta {
        std::vector<Entry> entries;
        std::vector<std::uint32_t> by_x;  // indices sorted by frac(X)
        std::vector<double> fx;
        std::vector<std::uint32_t> by_y;
        std::vector<double> fy;
        double umax = 0;
    };

    const Delta& delta(int depth) {
        if (static_cast<std::size_t>(depth) < deltas_.size()) return deltas_[depth];
        while (deltas_.size() <= static_cast<std::size_t>(depth)) build_delta(static_cast<int>(deltas_.size()));
        return deltas_[depth];
    }

    /// Candidates for `box` in no particular order.
    void collect(const FBox& box, int depth, const std::vector<Cand>& parent, std::vector<Cand>& out) {
        out.clear();
        out.reserve(parent.size());
        for (const Cand& c : parent)
            if (may_hit(c, box)) out.push_back(c);
        const Delta& D = delta(depth);
        if (D.entries.empty()) return;

        auto window = [&](const std::vector<std::uint32_t>& order, const std::vector<double>& keys, double lo,
                          double hi, auto&& fn) {
            double a = lo - D.umax - slack;
            double len = (hi - lo) + 2 * D.umax + 2 * slack;
            if (len >= 1) {
                for (std::uint32_t i : order) fn(i);
                return;
            }
            a -= std::floor(a);
            double b = a + len;
            auto from = std::lower_bound(keys.begin(), keys.end(), a);
            if (b <= 1) {
                auto to = std::upper_bound(keys.begin(), keys.end(), b);
                for (auto it = from; it != to; ++it) fn(order[it - keys.begin()]);
            } else {
                for (auto it = from; it != keys.end(); ++it) fn(order[it - keys.begin()]);
                auto to = std::upper_bound(keys.begin(), keys.end(), b - 1);
                for (auto it = keys.begin(); it != to; ++it) fn(order[it - keys.begin()]);
            }
        };
        auto xrange = [&](const Entry& e) {
            return std::pair(static_cast<long>(std::ceil(box.x0 - e.u - slack - e.X)),
                             static_cast<long>(std::floor(box.x1 + e.u + slack - e.X)));
        };
        auto consider = [&](const Entry& e, long d) {
            Cand c{e.cls, e.t, d, e.n, e.X + static_cast<double>(d), e.Y + static_cast<double>(d), e.inv};
            if (may_hit(c, box)) out.push_back(c);
        };
        window(D.by_x, D.fx, box.x0, box.x1, [&](std::uint32_t i) {
            const Entry& e = D.entries[i];
            auto [lo, hi] = xrange(e);
            for (long d = lo; d <= hi; ++d) consider(e, d);
        });
        window(D.by_y, D.fy, box.y0, box.y1, [&](std::uint32_t i) {
            const Entry& e = D.entries[i];
            auto [xlo, xhi] = xrange(e);
            long lo = static_cast<long>(std::ceil(box.y0 - e.u - slack - e.Y));
            long hi = static_cast<long>(std::floor(box.y1 + e.u + slack - e.Y));
            for (long d = lo; d <= hi; ++d)
                if (d < xlo || d > xhi) consider(e, d);
        });
    }

    FieldElement center(const Cand& c) const {
        long n = classes_.n(c.cls);
        return F_.element(Rational(Integer(classes_.A(c.cls)), Integer(n)) + Rational(c.d),
                          Rational(Integer(classes_.B(c.cls)), Integer(n)) + Rational(static_cast<long>(c.t)));
    }

    bool exact_contains(const Cand& c, const Box& box) const {
        return hyperbola_contains_box(embed(center(c)), Rational(Integer(1), Integer(c.n)), box);
    }

    bool in_pool(const Cand& c) const {
        return strip_meets(embed(center(c)), strip_half_width(c.n), R0_);
    }

private:
    void build_delta(int depth) {
        auto [T, N] = schedule_at(schedule_, depth);
        long Tp = 0;
        long Np = 0;
        if (depth > 0) std::tie(Tp, Np) = schedule_at(schedule_, depth - 1);
        classes_.extend_to(N);
        Delta D;
        std::size_t count = classes_.count_up_to(N);
        for (std::size_t i = 0; i < count; ++i) {
            long n = classes_.n(i);
            long A = classes_.A(i);
            long B = classes_.B(i);
            double a = static_cast<double>(A) / static_cast<double>(n);
            double u = strip_half_width(n).to_double();
            for (long t = -T - 1; t <= T; ++t) {
                long bn = B + t * n;  // n * b-coordinate
                if (!(std::labs(bn) < T * n)) continue;
                if (n <= Np && std::labs(bn) < Tp * n) continue;
                double b = static_cast<double>(bn) / static_cast<double>(n);
                D.entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::int32_t>(t), n, a + b * w1_,
                                     a + b * w2_, u, 1.0 / static_cast<double>(n)});
                D.umax = std::max(D.umax, u);
            }
        }
        auto index = [&](auto proj, std::vector<std::uint32_t>& order, std::vector<double>& keys) {
            std::vector<std::pair<double, std::uint32_t>> tmp;
            tmp.reserve(D.entries.size());
            for (std::uint32_t i = 0; i < D.entries.size(); ++i) {
                double v = proj(D.entries[i]);
                tmp.emplace_back(v - std::floor(v), i);
            }
            std::sort(tmp.begin(), tmp.end());
            for (auto& [k, i] : tmp) {
                keys.push_back(k);
                order.push_back(i);
            }
        };
        index([](const Entry& e) { return e.X; }, D.by_x, D.fx);
        index([](const Entry& e) { return e.Y; }, D.by_y, D.fy);
        deltas_.push_back(std::move(D));
    }

    const QuadField& F_;
    Schedule schedule_;
    ClassTable classes_;
    Box R0_;
    double w1_ = 0;
    double w2_ = 0;
    std::vector<Delta> deltas_;
};

// ---------------------------------------------------------------- state

SearchState::SearchState(const QuadField& F, Schedule schedule)
    : F_(&F), schedule_(schedule), engine_(std::make_unique<SearchEngine>(F, schedule)) {
    if (schedule.t0 < 1 || schedule.n0 < 1 || schedule.cn < 0 || schedule.max_depth < 0)
        throw std::invalid_argument("schedule needs t0 >= 1, n0 >= 1, cn >= 0, max_depth >= 0");
    std::tie(T_, N_) = schedule_at(schedule_, 0);
    engine_->classes().extend_to(N_);
}

SearchState::~SearchState() = default;

std::pair<long, long> SearchState::schedule_step(int new_depth) {
    if (new_depth > depth_) {
        depth_ = new_depth;
        std::tie(T_, N_) = schedule_at(schedule_, new_depth);
        engine_->classes().extend_to(N_);
    }
    return {T_, N_};
}

namespace {

struct Solver {
    SearchState& st;
    SearchEngine& eng;
    std::vector<std::pair<std::string, std::size_t>>& leaves;
    std::map<std::tuple<std::size_t, long, long>, std::size_t>& z_index;
    std::vector<PoolRegion>& Z;
    std::string path;

    std::size_t record(const Cand& c) {
        auto key = std::tuple(static_cast<std::size_t>(c.cls), static_cast<long>(c.t), c.d);
        auto it = z_index.find(key);
        if (it != z_index.end()) return it->second;
        PoolEntry pe{c.cls, c.t, c.d};
        Z.push_back({pe, Region(eng.center(c), eng.classes().witness(c.cls))});
        z_index.emplace(key, Z.size() - 1);
        return Z.size() - 1;
    }

    void run(const Box& box, int depth, const std::vector<Cand>& parent, long& boxes) {
        if (++boxes > st.schedule().max_boxes)
            throw InconclusiveError("box budget of " + std::to_string(st.schedule().max_boxes) + " exhausted");
        st.schedule_step(depth);
        FBox fb{box.x0.approx(), box.x1.approx(), box.y0.approx(), box.y1.approx()};
        std::vector<Cand> cands;
        eng.collect(fb, depth, parent, cands);
        // Only the few candidates that might contain the box need pool order.
        std::vector<const Cand*> hits;
        for (const Cand& c : cands)
            if (may_contain(c, fb)) hits.push_back(&c);
        std::sort(hits.begin(), hits.end(), [](const Cand* a, const Cand* b) { return key_less(*a, *b); });
        for (const Cand* c : hits) {
            if (!eng.exact_contains(*c, box) || !eng.in_pool(*c)) continue;
            leaves.emplace_back(path, record(*c));
            return;
        }
        if (depth >= st.schedule().max_depth)
            throw InconclusiveError("depth cap " + std::to_string(st.schedule().max_depth) + " reached at box " +
                                    (path.empty() ? std::string("R0") : path));
        auto kids = subdivide(box);
        for (int q = 0; q < 4; ++q) {
            path.push_back(static_cast<char>('0' + q));
            run(kids[q], depth + 1, cands, boxes);
            path.pop_back();
        }
    }
};

}  // namespace

std::vector<std::pair<std::string, std::size_t>> solve(const Box& R, SearchState& state) {
    std::vector<std::pair<std::string, std::size_t>> leaves;
    Solver s{state, *state.engine_, leaves, state.z_index_, state.Z_, {}};
    s.run(R, 0, {}, state.boxes_);
    return leaves;
}

Certificate prove(long m, const Schedule& schedule) {
    QuadField F = make_field(m);
    if (!schedule.skip_class_check && !class_number_is_one(F))
        throw ClassNumberError("class number of Q(sqrt(" + std::to_string(m) + ")) is not 1");
    SearchState st(F, schedule);
    auto leaves = solve(fundamental_box(F), st);

    Certificate cert;
    cert.m = F.m;
    cert.disc = F.disc;
    cert.T = st.T();
    cert.N = st.N();
    for (const PoolRegion& pr : st.Z()) {
        const Region& r = pr.region;
        cert.regions.push_back({r.center().a(), r.center().b(), r.q2().a(), r.q2().b()});
    }
    for (auto& [path, idx] : leaves) cert.leaves.push_back({path, static_cast<long>(idx)});
    return cert;
}

}  // namespace e2
