#include "dynsearch/cost.hpp"

#include <charconv>
#include <stdexcept>

namespace dynsearch {

Cost Cost::from_units(Rep units) {
    if (units < 0) {
        throw std::invalid_argument("negative cost");
    }
    if (units == kInfRep) {
        throw std::overflow_error("cost out of range");
    }
    return Cost(units);
}

Cost::Rep Cost::units() const {
    if (is_infinite()) {
        throw std::logic_error("units() of infinite cost");
    }
    return rep_;
}

Cost operator+(Cost a, Cost b) {
    if (a.is_infinite() || b.is_infinite()) {
        return kInfinity;
    }
    Cost::Rep sum = 0;
    if (__builtin_add_overflow(a.rep_, b.rep_, &sum) || sum == Cost::kInfRep) {
        throw std::overflow_error("cost addition overflows");
    }
    return Cost(sum);
}

Cost subtract_clamped(Cost a, Cost b) {
    if (a.is_infinite()) {
        return a;
    }
    if (b.is_infinite() || b.rep_ >= a.rep_) {
        return Cost();
    }
    return Cost(a.rep_ - b.rep_);
}

int decimal_places(std::string_view literal) {
    auto dot = literal.find('.');
    if (dot == std::string_view::npos) {
        return 0;
    }
    return static_cast<int>(literal.size() - dot - 1);
}

namespace {

Cost::Rep parse_digits(std::string_view digits, std::string_view whole) {
    Cost::Rep value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("malformed cost '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Cost parse_cost(std::string_view literal, std::int64_t scale) {
    if (literal == "inf" || literal == "INF" || literal == "infinity") {
        return kInfinity;
    }
    if (literal.empty() || literal.front() == '-') {
        throw std::invalid_argument("negative or empty cost '" + std::string(literal) + "'");
    }
    if (literal.front() == '+') {
        throw std::invalid_argument("malformed cost '" + std::string(literal) + "'");
    }
    int places = 0;
    for (std::int64_t s = scale; s > 1; s /= 10) {
        ++places;
    }
    auto dot = literal.find('.');
    std::string_view whole = literal.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : literal.substr(dot + 1);
    if (whole.empty() || (dot != std::string_view::npos && frac.empty())) {
        throw std::invalid_argument("malformed cost '" + std::string(literal) + "'");
    }
    if (static_cast<int>(frac.size()) > places) {
        throw std::invalid_argument("cost '" + std::string(literal) + "' has more decimals than the cost scale allows");
    }
    Cost::Rep units = parse_digits(whole, literal);
    Cost::Rep frac_units = frac.empty() ? 0 : parse_digits(frac, literal);
    for (std::size_t i = frac.size(); static_cast<int>(i) < places; ++i) {
        frac_units *= 10;
    }
    Cost::Rep total = 0;
    if (__builtin_mul_overflow(units, scale, &total) || __builtin_add_overflow(total, frac_units, &total)) {
        throw std::invalid_argument("cost '" + std::string(literal) + "' out of range");
    }
    return Cost::from_units(total);
}

std::string format_cost(Cost cost, std::int64_t scale) {
    if (cost.is_infinite()) {
        return "inf";
    }
    Cost::Rep units = cost.units();
    if (scale <= 1) {
        return std::to_string(units);
    }
    std::string frac = std::to_string(units % scale);
    int places = 0;
    for (std::int64_t s = scale; s > 1; s /= 10) {
        ++places;
    }
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') {
        frac.pop_back();
    }
    std::string out = std::to_string(units / scale);
    if (!frac.empty()) {
        out += "." + frac;
    }
    return out;
}

}  // namespace dynsearch
