#include "cgg/partition.hpp"

#include "cgg/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cgg {

Grain Grain::singleton(Rational point) {
    Grain g;
    g.kind_ = Kind::Singleton;
    g.point_ = std::move(point);
    return g;
}

Grain Grain::interval(std::optional<Rational> lo, bool lo_closed,
                      std::optional<Rational> hi, bool hi_closed) {
    if (!lo && lo_closed) {
        throw Error(ErrorCode::EmptyInterval, "an infinite lower endpoint must be open");
    }
    if (!hi && hi_closed) {
        throw Error(ErrorCode::EmptyInterval, "an infinite upper endpoint must be open");
    }
    if (lo && hi && !(*lo < *hi)) {
        // A degenerate closed interval must be expressed as a singleton.
        throw Error(ErrorCode::EmptyInterval,
                    "interval needs lo < hi, got lo=" + format_rational(*lo) +
                        " hi=" + format_rational(*hi));
    }
    Grain g;
    g.kind_ = Kind::Interval;
    g.lo_ = std::move(lo);
    g.hi_ = std::move(hi);
    g.lo_closed_ = lo_closed;
    g.hi_closed_ = hi_closed;
    return g;
}

const Rational& Grain::point() const {
    if (kind_ != Kind::Singleton) {
        throw Error(ErrorCode::ValidationError, "point() on an interval grain");
    }
    return point_;
}

const std::optional<Rational>& Grain::lo() const { return lo_; }
const std::optional<Rational>& Grain::hi() const { return hi_; }
bool Grain::lo_closed() const { return lo_closed_; }
bool Grain::hi_closed() const { return hi_closed_; }

bool Grain::contains(const Rational& x) const {
    if (kind_ == Kind::Singleton) return x == point_;
    if (lo_) {
        if (x < *lo_) return false;
        if (x == *lo_ && !lo_closed_) return false;
    }
    if (hi_) {
        if (x > *hi_) return false;
        if (x == *hi_ && !hi_closed_) return false;
    }
    return true;
}

bool Grain::bounded() const {
    if (kind_ == Kind::Singleton) return true;
    return lo_.has_value() && hi_.has_value();
}

bool Grain::operator==(const Grain& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Singleton) return point_ == other.point_;
    return lo_ == other.lo_ && hi_ == other.hi_ &&
           lo_closed_ == other.lo_closed_ && hi_closed_ == other.hi_closed_;
}

std::string Grain::to_string() const {
    if (kind_ == Kind::Singleton) return "{" + format_rational(point_) + "}";
    std::string out;
    out += lo_closed_ ? '[' : '(';
    out += lo_ ? format_rational(*lo_) : "-inf";
    out += ", ";
    out += hi_ ? format_rational(*hi_) : "+inf";
    out += hi_closed_ ? ']' : ')';
    return out;
}

Rational emp(const Grain& g) {
    if (g.kind() == Grain::Kind::Singleton) return g.point();
    if (!g.bounded()) {
        throw Error(ErrorCode::UnboundedGrain,
                    "no midpoint for unbounded grain " + g.to_string());
    }
    // Midpoint of the bounded interval; endpoint kinds are irrelevant.
    return (*g.lo() + *g.hi()) / 2;
}

namespace {

// Endpoint views used for ordering and disjointness. A singleton behaves as a
// closed degenerate interval.
struct LowerEnd {
    const std::optional<Rational>* value; // nullptr-like optional means -inf
    bool closed;
};
struct UpperEnd {
    const std::optional<Rational>* value; // absent means +inf
    bool closed;
};

LowerEnd lower_end(const Grain& g, std::optional<Rational>& scratch) {
    if (g.kind() == Grain::Kind::Singleton) {
        scratch = g.point();
        return {&scratch, true};
    }
    return {&g.lo(), g.lo_closed()};
}

UpperEnd upper_end(const Grain& g, std::optional<Rational>& scratch) {
    if (g.kind() == Grain::Kind::Singleton) {
        scratch = g.point();
        return {&scratch, true};
    }
    return {&g.hi(), g.hi_closed()};
}

// True iff every x in a is <= every y in b. With a's supremum strictly below
// b's infimum this is immediate; at a shared finite boundary the ordering
// still holds whatever the closedness, since x <= boundary <= y.
bool entirely_at_most(const Grain& a, const Grain& b) {
    std::optional<Rational> sa, sb;
    const UpperEnd ua = upper_end(a, sa);
    const LowerEnd lb = lower_end(b, sb);
    if (!ua.value->has_value() || !lb.value->has_value()) return false; // an infinite side
    return ua.value->value() <= lb.value->value();
}

// Strict disjoint-below: a's supremum is below b's infimum, allowing a shared
// boundary value only when at most one side includes it.
bool disjoint_below(const Grain& a, const Grain& b) {
    std::optional<Rational> sa, sb;
    const UpperEnd ua = upper_end(a, sa);
    const LowerEnd lb = lower_end(b, sb);
    if (!ua.value->has_value() || !lb.value->has_value()) return false;
    const Rational& hi_a = ua.value->value();
    const Rational& lo_b = lb.value->value();
    if (hi_a < lo_b) return true;
    if (hi_a == lo_b) return !(ua.closed && lb.closed);
    return false;
}

} // namespace

GrainOrder grain_compare(const Grain& a, const Grain& b) {
    if (a == b) return GrainOrder::Equal;
    if (entirely_at_most(a, b)) return GrainOrder::Less;
    if (entirely_at_most(b, a)) return GrainOrder::Greater;
    throw Error(ErrorCode::Incomparable,
                "grains " + a.to_string() + " and " + b.to_string() +
                    " overlap without being equal");
}

Partition Partition::finest() {
    Partition p;
    p.coverage_ = Coverage::ImplicitFinest;
    return p;
}

Partition Partition::lowest() {
    Partition p;
    p.grains_.push_back(Grain::interval(std::nullopt, false, std::nullopt, false));
    p.coverage_ = Coverage::ImplicitFinest;
    return p;
}

Partition Partition::validated(std::vector<Grain> grains, Coverage coverage) {
    // Sort by lower endpoint; a closed start precedes an open start at the
    // same value (so {0} sorts before (0,2]).
    std::vector<std::size_t> order(grains.size());
    std::iota(order.begin(), order.end(), 0);
    auto key_less = [&](std::size_t ia, std::size_t ib) {
        std::optional<Rational> sa, sb;
        const LowerEnd la = lower_end(grains[ia], sa);
        const LowerEnd lb = lower_end(grains[ib], sb);
        const bool inf_a = !la.value->has_value();
        const bool inf_b = !lb.value->has_value();
        if (inf_a != inf_b) return inf_a;
        if (!inf_a) {
            const Rational& va = la.value->value();
            const Rational& vb = lb.value->value();
            if (va != vb) return va < vb;
            if (la.closed != lb.closed) return la.closed;
        }
        return ia < ib;
    };
    std::sort(order.begin(), order.end(), key_less);

    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const Grain& a = grains[order[i]];
        const Grain& b = grains[order[i + 1]];
        if (!disjoint_below(a, b)) {
            throw Error(ErrorCode::OverlappingGrains,
                        "grains at input positions " + std::to_string(order[i]) + " and " +
                            std::to_string(order[i + 1]) + " overlap: " + a.to_string() +
                            " vs " + b.to_string());
        }
    }

    Partition p;
    p.grains_.reserve(grains.size());
    for (std::size_t idx : order) p.grains_.push_back(std::move(grains[idx]));
    p.coverage_ = coverage;
    return p;
}

Grain Partition::coarsen(const Rational& x) const {
    // First grain not entirely below x, if any, is the only candidate.
    auto it = std::partition_point(grains_.begin(), grains_.end(), [&](const Grain& g) {
        std::optional<Rational> scratch;
        const UpperEnd u = upper_end(g, scratch);
        if (!u.value->has_value()) return false; // reaches +inf, not below anything
        const Rational& hi = u.value->value();
        return hi < x || (hi == x && !u.closed);
    });
    if (it != grains_.end() && it->contains(x)) return *it;
    if (coverage_ == Coverage::Strict) {
        throw Error(ErrorCode::Uncovered,
                    "value " + format_rational(x) + " lies in no listed grain");
    }
    return Grain::singleton(x);
}

bool Partition::operator==(const Partition& other) const {
    return coverage_ == other.coverage_ && grains_ == other.grains_;
}

Grain closed_open(const Rational& lo, const Rational& hi) {
    return Grain::interval(lo, true, hi, false);
}
Grain open_closed(const Rational& lo, const Rational& hi) {
    return Grain::interval(lo, false, hi, true);
}
Grain closed_closed(const Rational& lo, const Rational& hi) {
    return Grain::interval(lo, true, hi, true);
}
Grain open_open(const Rational& lo, const Rational& hi) {
    return Grain::interval(lo, false, hi, false);
}

} // namespace cgg
