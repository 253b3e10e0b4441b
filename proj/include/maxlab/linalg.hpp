#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

// Small fixed-size linear algebra for 3D vector calculus and 3x3 matrix
// work. Everything here is value-semantic and allocation-free; the problem
// is strictly three-dimensional so no general-purpose library is pulled in.

namespace maxlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Vectors

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
    Vec2 operator-() const { return {-x, -y}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double c, const Vec2& v) { return v * c; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(norm2()); }
    double norm2() const { return x * x + y * y + z * z; }
    Vec2 xy() const { return {x, y}; }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

// Complex 3-vector.
struct CVec3 {
    Complex x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

    CVec3() = default;
    CVec3(Complex x_, Complex y_, Complex z_) : x(x_), y(y_), z(z_) {}
    explicit CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

    Complex operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Complex& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    CVec3 operator*(Complex c) const { return {c * x, c * y, c * z}; }
    CVec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    CVec3 operator-() const { return {-x, -y, -z}; }

    // Hermitian inner product <u, v> = sum u_i conj(v_i), as in the text.
    Complex inner(const CVec3& o) const {
        return x * std::conj(o.x) + y * std::conj(o.y) + z * std::conj(o.z);
    }
    // Bilinear (no conjugation) pairing with a real vector.
    Complex pair(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return std::norm(x) + std::norm(y) + std::norm(z); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
};

inline CVec3 operator*(Complex c, const CVec3& v) { return v * c; }
inline CVec3 operator*(double c, const CVec3& v) { return v * c; }

// ---------------------------------------------------------------------------
// Matrices (row-major)

struct Mat2 {
    std::array<double, 4> a{};  // [r*2 + c]

    double operator()(int r, int c) const { return a[2 * r + c]; }
    double& operator()(int r, int c) { return a[2 * r + c]; }

    static Mat2 zero() { return {}; }
    static Mat2 identity() {
        Mat2 m;
        m(0, 0) = m(1, 1) = 1.0;
        return m;
    }
    Vec2 operator*(const Vec2& v) const {
        return {a[0] * v.x + a[1] * v.y, a[2] * v.x + a[3] * v.y};
    }
    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat2 operator*(double c) const {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.a[i] = c * a[i];
        return r;
    }
    double trace() const { return a[0] + a[3]; }
};

struct Mat3 {
    std::array<double, 9> a{};

    double operator()(int r, int c) const { return a[3 * r + c]; }
    double& operator()(int r, int c) { return a[3 * r + c]; }

    static Mat3 zero() { return {}; }
    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
    static Mat3 diag(double d0, double d1, double d2) {
        Mat3 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        return m;
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Mat3 operator*(double c) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = c * a[i];
        return r;
    }
    Vec3 operator*(const Vec3& v) const {
        return {(*this)(0, 0) * v.x + (*this)(0, 1) * v.y + (*this)(0, 2) * v.z,
                (*this)(1, 0) * v.x + (*this)(1, 1) * v.y + (*this)(1, 2) * v.z,
                (*this)(2, 0) * v.x + (*this)(2, 1) * v.y + (*this)(2, 2) * v.z};
    }
    CVec3 operator*(const CVec3& v) const {
        CVec3 r;
        for (int i = 0; i < 3; ++i)
            r[i] = (*this)(i, 0) * v.x + (*this)(i, 1) * v.y + (*this)(i, 2) * v.z;
        return r;
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    double trace() const { return a[0] + a[4] + a[8]; }
    double det() const {
        return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
    }
    Mat3 inverse() const {
        const double d = det();
        if (std::abs(d) < 1e-300) throw std::domain_error("Mat3::inverse: singular matrix");
        Mat3 r;
        r(0, 0) = (a[4] * a[8] - a[5] * a[7]) / d;
        r(0, 1) = (a[2] * a[7] - a[1] * a[8]) / d;
        r(0, 2) = (a[1] * a[5] - a[2] * a[4]) / d;
        r(1, 0) = (a[5] * a[6] - a[3] * a[8]) / d;
        r(1, 1) = (a[0] * a[8] - a[2] * a[6]) / d;
        r(1, 2) = (a[2] * a[3] - a[0] * a[5]) / d;
        r(2, 0) = (a[3] * a[7] - a[4] * a[6]) / d;
        r(2, 1) = (a[1] * a[6] - a[0] * a[7]) / d;
        r(2, 2) = (a[0] * a[4] - a[1] * a[3]) / d;
        return r;
    }
    double frobenius() const {
        double s = 0.0;
        for (double v : a) s += v * v;
        return std::sqrt(s);
    }
    double max_abs() const {
        double m = 0.0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }
    bool is_symmetric(double tol = 1e-14) const {
        return std::abs(a[1] - a[3]) <= tol && std::abs(a[2] - a[6]) <= tol &&
               std::abs(a[5] - a[7]) <= tol;
    }
};

inline Mat3 operator*(double c, const Mat3& m) { return m * c; }

inline Mat3 outer(const Vec3& u, const Vec3& v) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = u[i] * v[j];
    return m;
}

struct CMat3 {
    std::array<Complex, 9> a{};

    Complex operator()(int r, int c) const { return a[3 * r + c]; }
    Complex& operator()(int r, int c) { return a[3 * r + c]; }

    static CMat3 zero() { return {}; }
    static CMat3 from_real(const Mat3& m) {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = m.a[i];
        return r;
    }

    CMat3 operator+(const CMat3& o) const {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    CMat3 operator-(const CMat3& o) const {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    CMat3 operator*(Complex c) const {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = c * a[i];
        return r;
    }
    CMat3 operator*(const CMat3& o) const {
        CMat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Complex s{0.0, 0.0};
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    CVec3 operator*(const CVec3& v) const {
        CVec3 r;
        for (int i = 0; i < 3; ++i)
            r[i] = (*this)(i, 0) * v.x + (*this)(i, 1) * v.y + (*this)(i, 2) * v.z;
        return r;
    }
    CMat3 conjugated() const {  // entrywise conjugate
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = std::conj(a[i]);
        return r;
    }
    CMat3 adjoint() const {  // conjugate transpose
        CMat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }
    CMat3 transposed() const {
        CMat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    Complex trace() const { return a[0] + a[4] + a[8]; }
    double frobenius2() const {
        double s = 0.0;
        for (const Complex& v : a) s += std::norm(v);
        return s;
    }
    double frobenius() const { return std::sqrt(frobenius2()); }
};

inline CMat3 mul(const Mat3& m, const CMat3& c) { return CMat3::from_real(m) * c; }

// ---------------------------------------------------------------------------
// Symmetric 3x3 eigenvalues, descending order.
//
// Closed-form Cardano solve on the deviatoric part followed by two Newton
// polish steps on the characteristic polynomial. Accurate to ~1e-14 relative
// for well-scaled input; no external solver needed at this size.

struct Eigen3 {
    double lam1 = 0.0, lam2 = 0.0, lam3 = 0.0;  // lam1 >= lam2 >= lam3
    double min() const { return lam3; }
    double max() const { return lam1; }
};

Eigen3 sym_eigenvalues(const Mat3& m);

}  // namespace maxlab
