#include "meterflow/decimal.hpp"

#include <algorithm>
#include <cstdio>

#include "meterflow/errors.hpp"

namespace meterflow {

namespace {

constexpr std::uint32_t kBase = 1'000'000'000;
constexpr int kLimbDigits = 9;

using Limbs = std::vector<std::uint32_t>;

void trim(Limbs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int compare_mag(const Limbs& a, const Limbs& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

void add_mag(Limbs& a, const Limbs& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t s = carry + a[i] + (i < b.size() ? b[i] : 0);
        a[i] = static_cast<std::uint32_t>(s % kBase);
        carry = s / kBase;
        if (carry == 0 && i >= b.size()) break;
    }
    if (carry) a.push_back(static_cast<std::uint32_t>(carry));
}

// a -= b, requires |a| >= |b|.
void sub_mag(Limbs& a, const Limbs& b) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        borrow = d < 0;
        if (borrow) d += kBase;
        a[i] = static_cast<std::uint32_t>(d);
        if (!borrow && i >= b.size()) break;
    }
    trim(a);
}

void mul_small(Limbs& a, std::uint32_t m) {
    if (m == 0) {
        a.clear();
        return;
    }
    std::uint64_t carry = 0;
    for (auto& limb : a) {
        std::uint64_t p = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(p % kBase);
        carry = p / kBase;
    }
    if (carry) a.push_back(static_cast<std::uint32_t>(carry));
}

void mul_pow10(Limbs& a, std::uint32_t n) {
    if (a.empty()) return;
    static constexpr std::uint32_t pow10[] = {1, 10, 100, 1000, 10000, 100000, 1000000, 10000000, 100000000};
    a.insert(a.begin(), n / kLimbDigits, 0);
    if (n % kLimbDigits) mul_small(a, pow10[n % kLimbDigits]);
}

Limbs mul_mag(const Limbs& a, const Limbs& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            acc[i + j] = cur % kBase;
            carry = cur / kBase;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = acc[k] + carry;
            acc[k] = cur % kBase;
            carry = cur / kBase;
            ++k;
        }
    }
    Limbs out(acc.begin(), acc.end());
    trim(out);
    return out;
}

}  // namespace

std::optional<Decimal> Decimal::try_parse(std::string_view token) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < token.size() && (token[pos] == '+' || token[pos] == '-')) {
        neg = token[pos] == '-';
        ++pos;
    }
    const std::size_t int_start = pos;
    while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') ++pos;
    const std::size_t int_len = pos - int_start;
    if (int_len == 0) return std::nullopt;
    std::size_t frac_start = pos;
    std::size_t frac_len = 0;
    if (pos < token.size() && token[pos] == '.') {
        frac_start = ++pos;
        while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') ++pos;
        frac_len = pos - frac_start;
        if (frac_len == 0) return std::nullopt;
    }
    if (pos != token.size()) return std::nullopt;

    // Collect digits right to left into 9-digit limbs.
    Decimal d;
    d.scale_ = static_cast<std::uint32_t>(frac_len);
    const std::size_t total = int_len + frac_len;
    auto digit_at = [&](std::size_t i) {  // i-th digit from the left of int||frac
        return i < int_len ? token[int_start + i] : token[frac_start + (i - int_len)];
    };
    d.limbs_.reserve(total / kLimbDigits + 1);
    std::size_t end = total;
    while (end > 0) {
        std::size_t begin = end >= kLimbDigits ? end - kLimbDigits : 0;
        std::uint32_t limb = 0;
        for (std::size_t i = begin; i < end; ++i) limb = limb * 10 + static_cast<std::uint32_t>(digit_at(i) - '0');
        d.limbs_.push_back(limb);
        end = begin;
    }
    d.negative_ = neg;
    d.normalize();
    return d;
}

Decimal Decimal::parse(std::string_view token) {
    if (auto d = try_parse(token)) return *std::move(d);
    throw DataError("malformed decimal '" + std::string(token) + "'");
}

Decimal Decimal::from_integer(std::int64_t value) {
    Decimal d;
    d.negative_ = value < 0;
    // Negate through unsigned to survive INT64_MIN.
    std::uint64_t mag = d.negative_ ? 0 - static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value);
    while (mag) {
        d.limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
        mag /= kBase;
    }
    d.normalize();
    return d;
}

std::string Decimal::digits() const {
    if (limbs_.empty()) return "0";
    std::string out = std::to_string(limbs_.back());
    char buf[16];
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof buf, "%09u", limbs_[i]);
        out += buf;
    }
    return out;
}

std::string Decimal::to_string() const {
    std::string mag = digits();
    if (mag.size() <= scale_) mag.insert(0, scale_ + 1 - mag.size(), '0');
    if (scale_ > 0) mag.insert(mag.size() - scale_, 1, '.');
    if (negative_) mag.insert(0, 1, '-');
    return mag;
}

Decimal Decimal::rescaled(std::uint32_t new_scale) const {
    if (new_scale < scale_) throw std::invalid_argument("Decimal::rescaled cannot reduce scale");
    Decimal d = *this;
    mul_pow10(d.limbs_, new_scale - scale_);
    d.scale_ = new_scale;
    return d;
}

Decimal Decimal::operator-() const {
    Decimal d = *this;
    d.negative_ = !d.negative_;
    d.normalize();
    return d;
}

void Decimal::add_signed(const Decimal& rhs, bool negate_rhs) {
    const Decimal* other = &rhs;
    Decimal widened;
    if (rhs.scale_ < scale_) {
        widened = rhs.rescaled(scale_);
        other = &widened;
    } else if (rhs.scale_ > scale_) {
        mul_pow10(limbs_, rhs.scale_ - scale_);
        scale_ = rhs.scale_;
    }
    const bool other_neg = other->negative_ != negate_rhs && !other->limbs_.empty();
    if (negative_ == other_neg) {
        add_mag(limbs_, other->limbs_);
    } else if (compare_mag(limbs_, other->limbs_) >= 0) {
        sub_mag(limbs_, other->limbs_);
    } else {
        Limbs tmp = other->limbs_;
        sub_mag(tmp, limbs_);
        limbs_ = std::move(tmp);
        negative_ = other_neg;
    }
    normalize();
}

Decimal& Decimal::operator+=(const Decimal& rhs) {
    add_signed(rhs, false);
    return *this;
}

Decimal& Decimal::operator-=(const Decimal& rhs) {
    add_signed(rhs, true);
    return *this;
}

Decimal operator*(const Decimal& lhs, const Decimal& rhs) {
    Decimal d;
    d.limbs_ = mul_mag(lhs.limbs_, rhs.limbs_);
    d.scale_ = lhs.scale_ + rhs.scale_;
    d.negative_ = lhs.negative_ != rhs.negative_;
    d.normalize();
    return d;
}

std::strong_ordering compare_value(const Decimal& lhs, const Decimal& rhs) {
    const std::uint32_t s = std::max(lhs.scale_, rhs.scale_);
    const Decimal a = lhs.rescaled(s);
    const Decimal b = rhs.rescaled(s);
    if (a.negative_ != b.negative_) return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = compare_mag(a.limbs_, b.limbs_);
    if (a.negative_) c = -c;
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

void Decimal::normalize() noexcept {
    trim(limbs_);
    if (limbs_.empty()) negative_ = false;
}

}  // namespace meterflow
