#pragma once

#include <string>
#include <string_view>

namespace spinchain {

// Half-integer spin stored exactly as the integer 2s, so s = 1/2 is twice() == 1.
// Storing 2s avoids floating-point equality on half-integers everywhere downstream.
class SpinValue {
 public:
  static SpinValue from_twice(int twice_s);

  // Accepts "1/2", "3/2", "0.5", "2.5", "1", "2". Rejects values that are not
  // positive half-integers ("0.3", "0", "-1").
  static SpinValue parse(std::string_view text);

  int twice() const noexcept { return twice_s_; }
  int dimension() const noexcept { return twice_s_ + 1; }  // local dim 2s+1
  double value() const noexcept { return 0.5 * twice_s_; }
  bool integer_spin() const noexcept { return twice_s_ % 2 == 0; }

  // "1/2", "1", "3/2", ... (lowest terms)
  std::string str() const;

  friend bool operator==(const SpinValue&, const SpinValue&) = default;

 private:
  explicit SpinValue(int twice_s) : twice_s_(twice_s) {}
  int twice_s_ = 1;
};

}  // namespace spinchain
