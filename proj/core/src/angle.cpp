#include "aqw/angle.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "aqw/walker.hpp"

namespace aqw {

namespace {

long long parse_count(std::string_view digits, std::string_view whole) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || v < 0) {
        throw ConfigError("bad angle '" + std::string(whole) + "'");
    }
    return v;
}

double pi_multiple(long long num, long long den) {
    return static_cast<double>(num) * kPi / static_cast<double>(den);
}

}  // namespace

double parse_angle(std::string_view text) {
    std::string_view t = text;
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    if (t.empty()) throw ConfigError("empty angle");

    const auto pi_at = t.find("pi");
    if (pi_at == std::string_view::npos) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
            throw ConfigError("bad angle '" + std::string(text) + "'");
        }
        return v;
    }

    std::string_view head = t.substr(0, pi_at);
    std::string_view tail = t.substr(pi_at + 2);
    bool negative = false;
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
        negative = head.front() == '-';
        head.remove_prefix(1);
    }
    if (!head.empty() && head.back() == '*') head.remove_suffix(1);
    const long long num = head.empty() ? 1 : parse_count(head, text);
    long long den = 1;
    if (!tail.empty()) {
        if (tail.front() != '/') throw ConfigError("bad angle '" + std::string(text) + "'");
        den = parse_count(tail.substr(1), text);
        if (den == 0) throw ConfigError("zero denominator in angle '" + std::string(text) + "'");
    }
    return pi_multiple(negative ? -num : num, den);
}

std::string render_angle(double radians) {
    if (radians == 0.0) return "0";
    const double ratio = radians / kPi;
    for (long long den = 1; den <= 4096; ++den) {
        const double scaled = ratio * static_cast<double>(den);
        if (std::abs(scaled) > 1e9) break;
        const long long num = std::llround(scaled);
        if (num == 0 || pi_multiple(num, den) != radians) continue;
        std::string out = num < 0 ? "-" : "";
        const long long mag = num < 0 ? -num : num;
        if (mag != 1) out += std::to_string(mag);
        out += "pi";
        if (den != 1) out += "/" + std::to_string(den);
        return out;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", radians);
    return buf;
}

}  // namespace aqw
