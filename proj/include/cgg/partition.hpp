// Grains (singletons and intervals of the real line), ordered partitions of
// the line, the coarsening lookup, and the midpoint reduction that turns a
// bounded grain back into a single exact value.
#pragma once

#include "cgg/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cgg {

// One cell of a partition. Interval endpoints may be infinite (represented as
// an absent bound), in which case that side must be open.
class Grain {
public:
    enum class Kind { Singleton, Interval };

    static Grain singleton(Rational point);
    // Validates: lo < hi when both finite (throws Error{EmptyInterval}),
    // infinite endpoints open (throws Error{EmptyInterval} otherwise).
    static Grain interval(std::optional<Rational> lo, bool lo_closed,
                          std::optional<Rational> hi, bool hi_closed);

    Kind kind() const { return kind_; }
    // Singleton accessors.
    const Rational& point() const;
    // Interval accessors; nullopt means unbounded on that side.
    const std::optional<Rational>& lo() const;
    const std::optional<Rational>& hi() const;
    bool lo_closed() const;
    bool hi_closed() const;

    bool contains(const Rational& x) const;
    bool bounded() const;

    bool operator==(const Grain& other) const;
    bool operator!=(const Grain& other) const { return !(*this == other); }

    // Rendering like "[-6, -4)", "{0}", "(-inf, +inf)" for reports and errors.
    std::string to_string() const;

private:
    Kind kind_ = Kind::Singleton;
    Rational point_;
    std::optional<Rational> lo_, hi_;
    bool lo_closed_ = false, hi_closed_ = false;
};

// Uniform-expectation reduction: a singleton maps to its point, a bounded
// interval to its midpoint (open or closed ends make no difference).
// Throws Error{UnboundedGrain} when either endpoint is infinite.
Rational emp(const Grain& g);

enum class GrainOrder { Less, Greater, Equal };

// Element-wise comparison: Less iff every x in a and y in b satisfy x <= y and
// the grains differ; symmetric for Greater; Equal iff identical. Throws
// Error{Incomparable} when neither direction holds (overlapping ad-hoc pair).
GrainOrder grain_compare(const Grain& a, const Grain& b);

// Gaps between listed grains are either filled with implicit singletons
// (every real gets a grain) or rejected at lookup time.
enum class Coverage { ImplicitFinest, Strict };

class Partition {
public:
    // All singletons: no listed grains, implicit-finest coverage.
    static Partition finest();
    // One grain (-inf, +inf).
    static Partition lowest();
    // Sorts the grains ascending and checks pairwise disjointness.
    // Throws Error{OverlappingGrains} naming the two offending input indices.
    static Partition validated(std::vector<Grain> grains,
                               Coverage coverage = Coverage::ImplicitFinest);

    // The unique grain containing x. Under Strict coverage an uncovered x
    // throws Error{Uncovered}; under ImplicitFinest it yields Singleton(x).
    Grain coarsen(const Rational& x) const;

    const std::vector<Grain>& grains() const { return grains_; }
    Coverage coverage() const { return coverage_; }

    bool operator==(const Partition& other) const;
    bool operator!=(const Partition& other) const { return !(*this == other); }

private:
    std::vector<Grain> grains_; // sorted ascending, pairwise disjoint
    Coverage coverage_ = Coverage::ImplicitFinest;
};

// Convenience constructors used all over the tests and scenarios.
Grain closed_open(const Rational& lo, const Rational& hi);  // [lo, hi)
Grain open_closed(const Rational& lo, const Rational& hi);  // (lo, hi]
Grain closed_closed(const Rational& lo, const Rational& hi); // [lo, hi]
Grain open_open(const Rational& lo, const Rational& hi);    // (lo, hi)

} // namespace cgg
