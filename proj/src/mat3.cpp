#include "lvc/mat3.hpp"

#include "lvc/error.hpp"

namespace lvc {

Mat3 Mat3::identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.at(i, i) = RatFunc(Rational(1));
    return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
    return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RatFunc s;
            for (int k = 0; k < 3; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    Vec3 r;
    for (int i = 0; i < 3; ++i) {
        RatFunc s;
        for (int k = 0; k < 3; ++k) s += at(i, k) * v[static_cast<size_t>(k)];
        r[static_cast<size_t>(i)] = s;
    }
    return r;
}

Mat3 Mat3::scaled(const RatFunc& c) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = at(i, j) * c;
    return r;
}

Mat3 Mat3::transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
    return r;
}

RatFunc Mat3::trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }

RatFunc Mat3::det() const {
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

RatFunc Mat3::minor_sum() const {
    return (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) +
           (at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0)) +
           (at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0));
}

Mat3 Mat3::adjugate() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // Cofactor of (j, i): adjugate is the transposed cofactor matrix.
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r.at(i, j) = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
        }
    return r;
}

Mat3 Mat3::inverse() const {
    RatFunc d = det();
    if (d.is_zero()) throw division_by_zero("inverse of a singular matrix");
    return adjugate().scaled(d.inv());
}

Vec3 solve3(const Mat3& M, const Vec3& rhs) {
    RatFunc d = M.det();
    if (d.is_zero()) throw division_by_zero("solve3 with a singular matrix");
    Vec3 x = M.adjugate() * rhs;
    RatFunc id = d.inv();
    for (auto& c : x) c *= id;
    return x;
}

} // namespace lvc
