#pragma once

#include <array>

#include "lvc/ratfunc.hpp"

namespace lvc {

using Vec3 = std::array<RatFunc, 3>;

// Dense 3x3 matrix of rational functions.  All operations are exact.
class Mat3 {
  public:
    Mat3() = default;
    explicit Mat3(std::array<std::array<RatFunc, 3>, 3> rows) : m_(std::move(rows)) {}
    static Mat3 identity();

    RatFunc& at(int i, int j) { return m_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    const RatFunc& at(int i, int j) const {
        return m_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    Mat3 operator+(const Mat3& o) const;
    Mat3 operator-(const Mat3& o) const;
    Mat3 operator*(const Mat3& o) const;
    Vec3 operator*(const Vec3& v) const;
    Mat3 scaled(const RatFunc& c) const;
    bool operator==(const Mat3& o) const { return m_ == o.m_; }

    Mat3 transpose() const;
    RatFunc trace() const;
    RatFunc det() const;
    // Sum of the three principal 2x2 minors (the second elementary symmetric
    // function of the eigenvalues; coefficient of t in the characteristic
    // polynomial t^3 - trace*t^2 + minor_sum*t - det).
    RatFunc minor_sum() const;
    Mat3 adjugate() const;
    Mat3 inverse() const; // throws division_by_zero when det() == 0

  private:
    std::array<std::array<RatFunc, 3>, 3> m_{};
};

// Exact solution of M x = rhs; throws division_by_zero when M is singular.
Vec3 solve3(const Mat3& M, const Vec3& rhs);

} // namespace lvc
