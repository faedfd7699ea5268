#include "spinchain/spin_value.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

constexpr int kMaxTwice = 1000;  // parse-level sanity cap; budgets apply later

bool parse_int(std::string_view text, long& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

SpinValue SpinValue::from_twice(int twice_s) {
  if (twice_s < 1) {
    throw InvalidSpec("spin must be a positive half-integer (2s >= 1), got 2s=" +
                      std::to_string(twice_s));
  }
  return SpinValue(twice_s);
}

SpinValue SpinValue::parse(std::string_view text) {
  const auto fail = [&]() -> SpinValue {
    throw InvalidSpec("spin '" + std::string(text) +
                      "' is not a positive half-integer (expected forms: 1, 1/2, 0.5)");
  };

  // strip surrounding whitespace
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    long num = 0, den = 0;
    if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den)) return fail();
    long twice = 0;
    if (den == 1) twice = 2 * num;
    else if (den == 2) twice = num;
    else return fail();
    if (twice < 1 || twice > kMaxTwice) return fail();
    return SpinValue(static_cast<int>(twice));
  }

  if (text.find('.') != std::string_view::npos) {
    char* end = nullptr;
    const std::string buf(text);
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) return fail();
    const double doubled = 2.0 * v;
    const long twice = static_cast<long>(doubled);
    // half-integers are exact in binary, so exact equality is the right test
    if (doubled != static_cast<double>(twice)) return fail();
    if (twice < 1 || twice > kMaxTwice) return fail();
    return SpinValue(static_cast<int>(twice));
  }

  long whole = 0;
  if (!parse_int(text, whole)) return fail();
  const long twice = 2 * whole;
  if (twice < 1 || twice > kMaxTwice) return fail();
  return SpinValue(static_cast<int>(twice));
}

std::string SpinValue::str() const {
  if (twice_s_ % 2 == 0) return std::to_string(twice_s_ / 2);
  return std::to_string(twice_s_) + "/2";
}

}  // namespace spinchain
