#pragma once

// The covering search: center classes Q_N, their translates Q_{T,N}, the
// recursive box solver and the prover that packages its result as a
// certificate.

#include "e2/certificate.hpp"
#include "e2/geometry.hpp"
#include "e2/ring.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace e2 {

/// The class of 1/q2 modulo O_F with a witness q2.
struct CenterClass {
    Rational a_mod1;
    Rational b_mod1;
    FieldElement q2;
    long n = 0;
};

/// All center classes with |Nm(q2)| <= N, built lazily as N grows.
/// Classes are numbered in (n, a_mod1, b_mod1) order, and that numbering is
/// stable under extend_to.
class ClassTable {
public:
    explicit ClassTable(const QuadField& F);

    /// Throws ClassNumberError if an ideal of norm <= N is not principal.
    void extend_to(long N);
    long bound() const { return bound_; }
    std::size_t size() const { return recs_.size(); }

    long n(std::size_t i) const { return recs_[i].n; }
    /// Numerators of the class: a_mod1 = A/n, b_mod1 = B/n with 0 <= A, B < n.
    long A(std::size_t i) const { return recs_[i].A; }
    long B(std::size_t i) const { return recs_[i].B; }
    /// Number of classes with n <= N (a prefix of the numbering).
    std::size_t count_up_to(long N) const;

    /// q2 = +-eps^k alpha with the class of 1/q2 equal to class i; among all
    /// such witnesses the one first in the order k = 0, 1, -1, 2, -2, ...
    /// with + before -.
    FieldElement witness(std::size_t i) const;
    CenterClass center_class(std::size_t i) const;

private:
    struct Rec {
        long n;
        long A;
        long B;
        std::uint32_t ideal;
        long k;
        int sign;
    };
    const QuadField* F_;
    long bound_ = 0;
    std::vector<Rec> recs_;
    std::vector<FieldElement> ideals_;
    std::vector<std::size_t> norm_end_;  // norm_end_[n] = classes with norm <= n
};

/// Q_N as a list sorted by (n, a_mod1, b_mod1).
std::vector<CenterClass> compute_QN(const QuadField& F, long N);

/// Least k/64 with k/64 >= n^{-1/2}.
Rational strip_half_width(long n);

/// A translate class + d + t*omega of a center class.
struct PoolEntry {
    std::size_t cls = 0;
    long t = 0;
    long d = 0;
};

/// Q_{T,N}: every translate of a class with n <= N whose b-coordinate has
/// |b| < T and whose x- or y-strip meets R0. Sorted by (n, |t|, t, d, class).
std::vector<Region> expand_translates(const QuadField& F, const std::vector<CenterClass>& classes, long T, long N,
                                      const Box& R0);

struct Schedule {
    long t0 = 5;
    long n0 = 40;
    long cn = 1;
    int max_depth = 64;
    long max_boxes = 2'000'000;
    bool skip_class_check = false;
};

/// (T, N) at recursion depth d: T = t0 + floor(d/2), N = n0 (1 + d cn).
std::pair<long, long> schedule_at(const Schedule& s, int depth);

struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Region of the current pool, identified by its class and translate.
struct PoolRegion {
    PoolEntry entry;
    Region region;
};

class SearchEngine;

/// The state Algorithm SOLVE threads through its recursion: current (T, N),
/// the depth reached, and the ordered list Z of regions used so far.
class SearchState {
public:
    SearchState(const QuadField& F, Schedule schedule);
    ~SearchState();
    SearchState(const SearchState&) = delete;
    SearchState& operator=(const SearchState&) = delete;

    const QuadField& field() const { return *F_; }
    const Schedule& schedule() const { return schedule_; }
    long T() const { return T_; }
    long N() const { return N_; }
    int depth() const { return depth_; }
    long boxes_visited() const { return boxes_; }
    const std::vector<PoolRegion>& Z() const { return Z_; }

    /// Moves (T, N) to the schedule value at new_depth if that is deeper
    /// than anything seen so far, growing the class table to match.
    std::pair<long, long> schedule_step(int new_depth);

private:
    friend class SearchEngine;
    friend std::vector<std::pair<std::string, std::size_t>> solve(const Box& R, SearchState& state);

    const QuadField* F_;
    Schedule schedule_;
    long T_ = 0;
    long N_ = 0;
    int depth_ = 0;
    long boxes_ = 0;
    std::vector<PoolRegion> Z_;
    std::map<std::tuple<std::size_t, long, long>, std::size_t> z_index_;
    std::unique_ptr<SearchEngine> engine_;
};

/// Covers R by quadtree leaves, each inside the first region of the
/// depth's pool (in pool order) that contains it. Returns (path, index into
/// state.Z()) per leaf in quadrant order. Throws InconclusiveError when the
/// depth cap or the box budget is exhausted.
std::vector<std::pair<std::string, std::size_t>> solve(const Box& R, SearchState& state);

/// Runs solve on R0 and packages the result. Throws std::invalid_argument
/// for bad m, ClassNumberError when the class number is not 1 (unless the
/// check is skipped) and InconclusiveError when the budget runs out.
Certificate prove(long m, const Schedule& schedule = {});

}  // namespace e2
