#ifndef DYNSEARCH_COST_HPP
#define DYNSEARCH_COST_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace dynsearch {

/// Exact non-negative fixed-point cost with a distinguished infinity.
///
/// Values are stored as integer units; the decimal scale (units per 1.0) is a
/// property of the transition system that produced them, so arithmetic never
/// rounds. Infinity absorbs addition and compares greater than every finite
/// value.
class Cost {
public:
    using Rep = std::int64_t;

    constexpr Cost() = default;

    /// Throws std::invalid_argument for negative input.
    static Cost from_units(Rep units);
    static constexpr Cost infinity() { return Cost(kInfRep); }
    static constexpr Cost zero() { return Cost(); }

    constexpr bool is_infinite() const { return rep_ == kInfRep; }
    constexpr bool is_finite() const { return rep_ != kInfRep; }

    /// Raw integer units. Precondition: finite.
    Rep units() const;

    /// Exact sum; throws std::overflow_error when the finite sum does not fit.
    friend Cost operator+(Cost a, Cost b);
    Cost& operator+=(Cost other) { return *this = *this + other; }

    /// max(0, a - b) for finite b; infinite a stays infinite.
    friend Cost subtract_clamped(Cost a, Cost b);

    friend constexpr bool operator==(Cost, Cost) = default;
    friend constexpr auto operator<=>(Cost, Cost) = default;

private:
    static constexpr Rep kInfRep = std::numeric_limits<Rep>::max();
    constexpr explicit Cost(Rep rep) : rep_(rep) {}
    Rep rep_ = 0;
};

inline constexpr Cost kInfinity = Cost::infinity();

/// Number of digits after the decimal point in a cost literal ("1.25" -> 2).
int decimal_places(std::string_view literal);

/// Parses "inf", an integer, or a decimal literal into units of `scale`.
/// Throws std::invalid_argument on malformed, negative, or over-precise input.
Cost parse_cost(std::string_view literal, std::int64_t scale = 1);

/// Inverse of parse_cost: "inf", "3", "1.25".
std::string format_cost(Cost cost, std::int64_t scale = 1);

}  // namespace dynsearch

#endif
