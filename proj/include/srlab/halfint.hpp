#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>

#include "srlab/errors.hpp"

namespace srlab {

// Half-integer quantum number stored as the doubled value 2j (or 2m).
// All selection rules and map keys work on exact integers; conversion to
// double happens only inside coefficient formulas.
class HalfInt {
  public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
    static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }

    constexpr bool is_integer() const { return (twice_ & 1) == 0; }
    // true for a valid angular momentum magnitude (j >= 0)
    constexpr bool valid_j() const { return twice_ >= 0; }
    // true if m is a valid projection for this j
    constexpr bool holds_projection(HalfInt m) const {
        return std::abs(m.twice_) <= twice_ && ((twice_ - m.twice_) & 1) == 0;
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice_ - b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice_); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

  private:
    explicit constexpr HalfInt(int twice) : twice_(twice) {}
    int twice_ = 0;
};

inline constexpr HalfInt half_one = HalfInt::from_twice(1);

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

inline HalfInt abs(HalfInt h) { return HalfInt::from_twice(std::abs(h.twice())); }
inline HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
inline HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }

inline void require_jm(HalfInt j, HalfInt m, const char* where) {
    if (!j.valid_j() || !j.holds_projection(m))
        throw InvalidQuantumNumber(std::string(where) + ": invalid (j, m) = (" + j.str() + ", " + m.str() + ")");
}

} // namespace srlab
