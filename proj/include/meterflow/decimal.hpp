#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meterflow {

/// Exact signed base-10 fixed-point number: value = (-1)^sign * digits / 10^scale.
///
/// The magnitude is unbounded. Addition and multiplication never round; the
/// result of a sum carries the larger of the two scales, so trailing zeros of
/// the inputs survive ("17.8280" + "0.0000" formats as "17.8280"). Zero is
/// always non-negative.
class Decimal {
public:
    Decimal() = default;

    // Token grammar: [+-]digits[.digits]. Throws DataError on anything else.
    static Decimal parse(std::string_view token);
    static std::optional<Decimal> try_parse(std::string_view token);
    static Decimal from_integer(std::int64_t value);

    bool negative() const noexcept { return negative_; }
    bool is_zero() const noexcept { return limbs_.empty(); }
    std::uint32_t scale() const noexcept { return scale_; }
    // Magnitude as a decimal digit string without sign or point ("148361").
    std::string digits() const;
    std::string to_string() const;

    // Same value with `new_scale` fractional digits; new_scale must be >= scale().
    Decimal rescaled(std::uint32_t new_scale) const;

    Decimal operator-() const;
    Decimal& operator+=(const Decimal& rhs);
    Decimal& operator-=(const Decimal& rhs);
    friend Decimal operator+(Decimal lhs, const Decimal& rhs) { return lhs += rhs; }
    friend Decimal operator-(Decimal lhs, const Decimal& rhs) { return lhs -= rhs; }
    // Scale of a product is the sum of the scales.
    friend Decimal operator*(const Decimal& lhs, const Decimal& rhs);

    // Structural equality: sign, digits and scale all match.
    friend bool operator==(const Decimal&, const Decimal&) = default;
    // Numeric ordering, ignoring scale ("1.50" and "1.5" are equivalent).
    friend std::strong_ordering compare_value(const Decimal& lhs, const Decimal& rhs);

private:
    using Limbs = std::vector<std::uint32_t>;  // base 1e9, little-endian, no high zero limbs

    bool negative_ = false;
    Limbs limbs_;
    std::uint32_t scale_ = 0;

    void add_signed(const Decimal& rhs, bool negate_rhs);
    void normalize() noexcept;
};

}  // namespace meterflow
