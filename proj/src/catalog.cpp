#include "maxlab/catalog.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maxlab::catalog {

namespace {

double param(const Params& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

[[noreturn]] void unknown(const std::string& kind, const std::string& name,
                          const std::vector<std::string>& valid) {
    std::ostringstream os;
    os << "unknown " << kind << " '" << name << "' (valid:";
    for (const auto& v : valid) os << " " << v;
    os << ")";
    throw std::invalid_argument(os.str());
}

}  // namespace

// ---------------------------------------------------------------------------
// Domains

std::vector<std::string> domain_names() {
    return {"flat", "paraboloid", "wedge", "abs", "cusp32", "sinbump"};
}

geometry::GraphFunction graph_by_name(const std::string& name, const Params& params) {
    geometry::GraphFunction g;
    g.name = name;
    if (name == "flat") {
        g.value = [](Vec2) { return 0.0; };
        g.grad = [](Vec2) { return Vec2{0.0, 0.0}; };
        g.hess = [](Vec2) { return Mat2::zero(); };
        g.lipschitz_K = 0.0;
        return g;
    }
    if (name == "paraboloid") {
        const double c = param(params, "coeff", 1.0);
        g.value = [c](Vec2 p) { return 0.5 * c * p.norm2(); };
        g.grad = [c](Vec2 p) { return c * p; };
        g.hess = [c](Vec2) {
            Mat2 h;
            h(0, 0) = h(1, 1) = c;
            return h;
        };
        // Lipschitz constant on the working ball B_2
        g.lipschitz_K = 2.0 * std::abs(c);
        return g;
    }
    if (name == "wedge") {
        const double k = param(params, "k", 1.0);
        g.value = [k](Vec2 p) { return -k * std::abs(p.x); };
        g.grad = [k](Vec2 p) { return Vec2{p.x >= 0.0 ? -k : k, 0.0}; };
        g.hess = [](Vec2) { return Mat2::zero(); };  // a.e. value
        g.lipschitz_K = k;
        return g;
    }
    if (name == "abs") {
        g.value = [](Vec2 p) { return p.norm(); };
        g.grad = [](Vec2 p) {
            const double r = p.norm();
            if (r < 1e-14) return Vec2{0.0, 0.0};  // a.e. value at the tip
            return p * (1.0 / r);
        };
        g.hess = [](Vec2 p) {
            const double r = p.norm();
            Mat2 h;
            if (r < 1e-10) return h;
            h(0, 0) = p.y * p.y / (r * r * r);
            h(1, 1) = p.x * p.x / (r * r * r);
            h(0, 1) = h(1, 0) = -p.x * p.y / (r * r * r);
            return h;
        };
        g.lipschitz_K = 1.0;
        return g;
    }
    if (name == "cusp32") {
        g.value = [](Vec2 p) { return -std::pow(p.norm(), 1.5); };
        g.grad = [](Vec2 p) {
            const double r = p.norm();
            if (r < 1e-14) return Vec2{0.0, 0.0};
            return p * (-1.5 * std::sqrt(r) / r);
        };
        g.hess = [](Vec2 p) {
            const double r = p.norm();
            Mat2 h;
            if (r < 1e-12) return h;
            // D^2 (-r^{3/2}) = -1.5 ( r^{-1/2} I - 0.5 r^{-3/2} x x^t ... )
            const double a = -1.5 / std::sqrt(r);
            const double b = 0.75 / std::pow(r, 1.5);
            h(0, 0) = a + b * p.x * p.x * (1.0 / r) * 0.0;  // assembled below
            // d_i d_j (r^{3/2}) = 1.5 r^{-1/2} delta_ij - 0.75 r^{-3/2} xi xj / ... derive:
            // d_j r = x_j / r; d_i d_j r^{3/2} = 1.5 ( (x_i x_j)(-0.5) r^{-3/2} + delta_ij r^{-1/2} ) ... use exact:
            const double rm12 = 1.0 / std::sqrt(r);
            const double rm32 = rm12 / r;
            h(0, 0) = -(1.5 * rm12 - 0.75 * rm32 * p.x * p.x / r * r);
            (void)a;
            (void)b;
            // cleaner: d_i d_j r^{3/2} = 1.5 r^{-1/2} delta_ij - 0.75 r^{-3/2} (x_i x_j / r) ... see below
            const double diag = 1.5 * rm12;
            const double off = -0.75 * rm32;
            h(0, 0) = -(diag + off * p.x * p.x / r);
            h(1, 1) = -(diag + off * p.y * p.y / r);
            h(0, 1) = h(1, 0) = -(off * p.x * p.y / r);
            return h;
        };
        g.lipschitz_K = 1.5 * std::sqrt(2.0);  // on the working ball B_2
        return g;
    }
    if (name == "sinbump") {
        const double a = param(params, "a", 0.25);
        g.value = [a](Vec2 p) { return a * std::sin(p.x) * std::cos(p.y); };
        g.grad = [a](Vec2 p) {
            return Vec2{a * std::cos(p.x) * std::cos(p.y), -a * std::sin(p.x) * std::sin(p.y)};
        };
        g.hess = [a](Vec2 p) {
            Mat2 h;
            h(0, 0) = -a * std::sin(p.x) * std::cos(p.y);
            h(1, 1) = -a * std::sin(p.x) * std::cos(p.y);
            h(0, 1) = h(1, 0) = -a * std::cos(p.x) * std::sin(p.y);
            return h;
        };
        g.lipschitz_K = a * std::sqrt(2.0);
        return g;
    }
    unknown("domain", name, domain_names());
}

// ---------------------------------------------------------------------------
// Coefficients

std::vector<std::string> coefficient_names() {
    return {"identity", "scaled", "aniso", "sin_iso", "var_spd"};
}

fields::CoefficientField coefficient_by_name(const std::string& name, const Params& params) {
    fields::CoefficientField s;
    s.name = name;
    if (name == "identity") {
        s.evaluate = [](Vec3) { return Mat3::identity(); };
        s.constant = true;
        s.beta0 = s.beta1 = 1.0;
        return s;
    }
    if (name == "scaled") {
        const double b = param(params, "beta", 2.0);
        if (b <= 0.0) throw std::invalid_argument("coefficient 'scaled': beta must be positive");
        s.evaluate = [b](Vec3) { return Mat3::identity() * b; };
        s.constant = true;
        s.beta0 = s.beta1 = b;
        return s;
    }
    if (name == "aniso") {
        // fixed SPD matrix, eigenvalues ~ {0.8, 1.5, 2.7}
        Mat3 m;
        m(0, 0) = 2.0;
        m(1, 1) = 1.5;
        m(2, 2) = 1.2;
        m(0, 1) = m(1, 0) = 0.3;
        m(1, 2) = m(2, 1) = 0.2;
        m(0, 2) = m(2, 0) = -0.4;
        const Eigen3 e = sym_eigenvalues(m);
        s.evaluate = [m](Vec3) { return m; };
        s.constant = true;
        s.beta0 = e.min();
        s.beta1 = e.max();
        return s;
    }
    if (name == "sin_iso") {
        const double a = param(params, "amp", 0.1);
        if (!(a >= 0.0 && a < 1.0))
            throw std::invalid_argument("coefficient 'sin_iso': amp must lie in [0,1)");
        s.evaluate = [a](Vec3 x) { return Mat3::identity() * (1.0 + a * std::sin(x.x)); };
        s.deriv = [a](Vec3 x) {
            std::array<Mat3, 3> d{Mat3::zero(), Mat3::zero(), Mat3::zero()};
            d[0] = Mat3::identity() * (a * std::cos(x.x));
            return d;
        };
        s.beta0 = 1.0 - a;
        s.beta1 = 1.0 + a;
        return s;
    }
    if (name == "var_spd") {
        const double a = param(params, "amp", 0.3);
        if (!(a >= 0.0 && a < 0.6))
            throw std::invalid_argument("coefficient 'var_spd': amp must lie in [0,0.6)");
        s.evaluate = [a](Vec3 x) {
            Mat3 m = Mat3::identity();
            m(0, 0) += a * std::sin(x.x);
            m(1, 1) += a * std::cos(x.y);
            const double off = 0.5 * a * std::sin(x.y + x.z);
            m(1, 2) += off;
            m(2, 1) += off;
            return m;
        };
        s.deriv = [a](Vec3 x) {
            std::array<Mat3, 3> d{Mat3::zero(), Mat3::zero(), Mat3::zero()};
            d[0](0, 0) = a * std::cos(x.x);
            d[1](1, 1) = -a * std::sin(x.y);
            const double doff = 0.5 * a * std::cos(x.y + x.z);
            d[1](1, 2) = d[1](2, 1) = doff;
            d[2](1, 2) = d[2](2, 1) = doff;
            return d;
        };
        // worst case: 1 - a from the diagonal, minus off-diagonal coupling a/2
        s.beta0 = 1.0 - 1.5 * a;
        s.beta1 = 1.0 + 1.5 * a;
        if (s.beta0 <= 0.0) throw std::invalid_argument("coefficient 'var_spd': amp too large");
        return s;
    }
    unknown("coefficient", name, coefficient_names());
}

// ---------------------------------------------------------------------------
// Vector fields

std::vector<std::string> vector_field_names() {
    return {"const-x", "const-y", "const-z", "linear", "rotor",
            "bilinear", "trig",    "quad",    "shear",  "radial"};
}

std::vector<std::string> default_basket_names() { return vector_field_names(); }

fields::VectorField vector_field_by_name(const std::string& name) {
    fields::VectorField f;
    f.name = name;
    auto constant = [&](double a, double b, double c) {
        f.evaluate = [a, b, c](Vec3) { return CVec3{Complex(a), Complex(b), Complex(c)}; };
        f.jac = [](Vec3) { return CMat3::zero(); };
    };
    if (name == "const-x") {
        constant(1, 0, 0);
        return f;
    }
    if (name == "const-y") {
        constant(0, 1, 0);
        return f;
    }
    if (name == "const-z") {
        constant(0, 0, 1);
        return f;
    }
    if (name == "linear") {  // v = x
        f.evaluate = [](Vec3 x) { return CVec3{Complex(x.x), Complex(x.y), Complex(x.z)}; };
        f.jac = [](Vec3) {
            CMat3 j;
            j(0, 0) = j(1, 1) = j(2, 2) = 1.0;
            return j;
        };
        return f;
    }
    if (name == "rotor") {  // v = (-x2, x1, 0), rot = (0,0,2)
        f.evaluate = [](Vec3 x) { return CVec3{Complex(-x.y), Complex(x.x), Complex(0.0)}; };
        f.jac = [](Vec3) {
            CMat3 j;
            j(0, 1) = -1.0;
            j(1, 0) = 1.0;
            return j;
        };
        return f;
    }
    if (name == "bilinear") {  // v = (x2 x3, x1 x3, x1 x2) = grad(x1 x2 x3), curl-free
        f.evaluate = [](Vec3 x) {
            return CVec3{Complex(x.y * x.z), Complex(x.x * x.z), Complex(x.x * x.y)};
        };
        f.jac = [](Vec3 x) {
            CMat3 j;
            j(0, 1) = x.z;
            j(0, 2) = x.y;
            j(1, 0) = x.z;
            j(1, 2) = x.x;
            j(2, 0) = x.y;
            j(2, 1) = x.x;
            return j;
        };
        return f;
    }
    if (name == "trig") {
        f.evaluate = [](Vec3 x) {
            return CVec3{Complex(std::sin(x.z)), Complex(std::cos(x.x)), Complex(x.y)};
        };
        f.jac = [](Vec3 x) {
            CMat3 j;
            j(0, 2) = std::cos(x.z);
            j(1, 0) = -std::sin(x.x);
            j(2, 1) = 1.0;
            return j;
        };
        return f;
    }
    if (name == "quad") {
        f.evaluate = [](Vec3 x) {
            return CVec3{Complex(x.x * x.x), Complex(x.y * x.y), Complex(x.z * x.z)};
        };
        f.jac = [](Vec3 x) {
            CMat3 j;
            j(0, 0) = 2.0 * x.x;
            j(1, 1) = 2.0 * x.y;
            j(2, 2) = 2.0 * x.z;
            return j;
        };
        return f;
    }
    if (name == "shear") {
        f.evaluate = [](Vec3 x) {
            return CVec3{Complex(x.z, 0.0), Complex(0.5 * x.x), Complex(1.0 + x.y)};
        };
        f.jac = [](Vec3) {
            CMat3 j;
            j(0, 2) = 1.0;
            j(1, 0) = 0.5;
            j(2, 1) = 1.0;
            return j;
        };
        return f;
    }
    if (name == "radial") {
        f.evaluate = [](Vec3 x) {
            const double e = std::exp(-x.norm2());
            return CVec3{Complex(x.x * e), Complex(x.y * e), Complex(x.z * e)};
        };
        f.jac = [](Vec3 x) {
            const double e = std::exp(-x.norm2());
            CMat3 j;
            for (int i = 0; i < 3; ++i)
                for (int c = 0; c < 3; ++c)
                    j(i, c) = e * ((i == c ? 1.0 : 0.0) - 2.0 * x[i] * x[c]);
            return j;
        };
        return f;
    }
    unknown("vector field", name, vector_field_names());
}

std::vector<fields::VectorField> basket(const std::vector<std::string>& names) {
    std::vector<fields::VectorField> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(vector_field_by_name(n));
    return out;
}

// ---------------------------------------------------------------------------
// Scalar fields

std::vector<std::string> scalar_field_names() { return {"one", "coord3", "poly", "trig"}; }

fields::ScalarField scalar_field_by_name(const std::string& name) {
    fields::ScalarField f;
    f.name = name;
    if (name == "one") {
        f.evaluate = [](Vec3) { return Complex{1.0, 0.0}; };
        f.grad = [](Vec3) { return CVec3{}; };
        return f;
    }
    if (name == "coord3") {
        f.evaluate = [](Vec3 x) { return Complex{x.z, 0.0}; };
        f.grad = [](Vec3) { return CVec3{Complex(0.0), Complex(0.0), Complex(1.0)}; };
        return f;
    }
    if (name == "poly") {
        f.evaluate = [](Vec3 x) { return Complex{x.x * x.y * x.z, 0.0}; };
        f.grad = [](Vec3 x) {
            return CVec3{Complex(x.y * x.z), Complex(x.x * x.z), Complex(x.x * x.y)};
        };
        return f;
    }
    if (name == "trig") {
        f.evaluate = [](Vec3 x) { return Complex{std::sin(x.x + 2.0 * x.z), 0.0}; };
        f.grad = [](Vec3 x) {
            const double c = std::cos(x.x + 2.0 * x.z);
            return CVec3{Complex(c), Complex(0.0), Complex(2.0 * c)};
        };
        return f;
    }
    unknown("scalar field", name, scalar_field_names());
}

// ---------------------------------------------------------------------------
// Diffeomorphisms

std::vector<std::string> diffeo_names() {
    return {"identity", "scale", "affine", "shearpoly", "cusp32", "cusp12"};
}

namespace {

// (x', x3) -> (x', x3 + |x'|^p) with closed-form derivatives away from the
// axis. Valid for p > 1 so the map stays Lipschitz.
diffeo::Diffeomorphism cusp_map(double p, const std::string& name) {
    diffeo::Diffeomorphism d;
    d.name = name;
    d.forward = [p](Vec3 x) {
        const double r = std::hypot(x.x, x.y);
        return Vec3{x.x, x.y, x.z + std::pow(r, p)};
    };
    d.inverse = [p](Vec3 y) {
        const double r = std::hypot(y.x, y.y);
        return Vec3{y.x, y.y, y.z - std::pow(r, p)};
    };
    d.jac = [p](Vec3 x) {
        Mat3 j = Mat3::identity();
        const double r = std::hypot(x.x, x.y);
        if (r > 1e-300) {
            const double c = p * std::pow(r, p - 2.0);  // d_i r^p = c * x_i
            j(0, 2) = c * x.x;
            j(1, 2) = c * x.y;
        }
        return j;
    };
    d.second = [p](Vec3 x) {
        std::array<Mat3, 3> d2{Mat3::zero(), Mat3::zero(), Mat3::zero()};
        const double r = std::hypot(x.x, x.y);
        if (r > 1e-300) {
            // d_i d_j r^p = p r^{p-2} delta_ij + p(p-2) r^{p-4} x_i x_j
            const double c1 = p * std::pow(r, p - 2.0);
            const double c2 = p * (p - 2.0) * std::pow(r, p - 4.0);
            d2[2](0, 0) = c1 + c2 * x.x * x.x;
            d2[2](1, 1) = c1 + c2 * x.y * x.y;
            d2[2](0, 1) = d2[2](1, 0) = c2 * x.x * x.y;
        }
        return d2;
    };
    return d;
}

}  // namespace

diffeo::Diffeomorphism diffeo_by_name(const std::string& name, const Params& params) {
    diffeo::Diffeomorphism d;
    d.name = name;
    if (name == "identity") {
        d.forward = [](Vec3 x) { return x; };
        d.inverse = [](Vec3 y) { return y; };
        d.jac = [](Vec3) { return Mat3::identity(); };
        d.second = [](Vec3) { return std::array<Mat3, 3>{Mat3::zero(), Mat3::zero(), Mat3::zero()}; };
        return d;
    }
    if (name == "scale") {
        const double c = param(params, "c", 2.0);
        if (c == 0.0) throw std::invalid_argument("diffeo 'scale': c must be nonzero");
        d.forward = [c](Vec3 x) { return c * x; };
        d.inverse = [c](Vec3 y) { return (1.0 / c) * y; };
        d.jac = [c](Vec3) { return Mat3::identity() * c; };
        d.second = [](Vec3) { return std::array<Mat3, 3>{Mat3::zero(), Mat3::zero(), Mat3::zero()}; };
        return d;
    }
    if (name == "affine") {
        // fixed well-conditioned A and shift
        Mat3 a = Mat3::identity();
        a(0, 0) = 1.2;
        a(0, 1) = 0.3;
        a(1, 1) = 0.9;
        a(1, 2) = -0.2;
        a(2, 2) = 1.1;
        a(2, 0) = 0.1;
        const Vec3 b{0.05, -0.1, 0.2};
        const Mat3 ai = a.inverse();
        d.forward = [a, b](Vec3 x) { return a * x + b; };
        d.inverse = [ai, b](Vec3 y) { return ai * (y - b); };
        // J(j,k) = d_j (A x + b)_k = A_{kj}
        d.jac = [a](Vec3) { return a.transposed(); };
        d.second = [](Vec3) { return std::array<Mat3, 3>{Mat3::zero(), Mat3::zero(), Mat3::zero()}; };
        return d;
    }
    if (name == "shearpoly") {
        // triangular polynomial map, closed-form inverse by back-substitution
        const double a = param(params, "a", 0.2);
        const double b = param(params, "b", 0.15);
        d.forward = [a, b](Vec3 x) {
            return Vec3{x.x, x.y + a * x.x * x.x, x.z + b * x.x * x.y};
        };
        d.inverse = [a, b](Vec3 y) {
            const double x1 = y.x;
            const double x2 = y.y - a * x1 * x1;
            const double x3 = y.z - b * x1 * x2;
            return Vec3{x1, x2, x3};
        };
        d.jac = [a, b](Vec3 x) {
            Mat3 j = Mat3::identity();
            j(0, 1) = 2.0 * a * x.x;  // d_1 psi_2
            j(0, 2) = b * x.y;        // d_1 psi_3
            j(1, 2) = b * x.x;        // d_2 psi_3
            return j;
        };
        d.second = [a, b](Vec3) {
            std::array<Mat3, 3> d2{Mat3::zero(), Mat3::zero(), Mat3::zero()};
            d2[1](0, 0) = 2.0 * a;
            d2[2](0, 1) = d2[2](1, 0) = b;
            return d2;
        };
        return d;
    }
    if (name == "cusp32") return cusp_map(1.5, name);
    if (name == "cusp12") return cusp_map(0.5, name);
    unknown("diffeomorphism", name, diffeo_names());
}

std::vector<std::string> kernel_names() { return {"bump", "quartic"}; }

}  // namespace maxlab::catalog
