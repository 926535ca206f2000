#include "rscc/maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rscc/errors.hpp"
#include "rscc/numfmt.hpp"

namespace rscc {

namespace {

bool finite_cplx(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// integer power by repeated squaring; overflow shows up as a non-finite result
cplx ipow(cplx z, int d) {
    cplx acc{1.0, 0.0};
    while (d > 0) {
        if (d & 1) acc *= z;
        d >>= 1;
        if (d) z *= z;
    }
    return acc;
}

std::string fmt_cplx(const cplx& z) {
    if (z.imag() == 0.0) return fmt_double(z.real());
    return fmt_double(z.real()) + "," + fmt_double(z.imag());
}

cplx parse_cplx(const std::string& tok) {
    auto comma = tok.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(tok), 0.0};
        return {std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric token in map spec: '" + tok + "'");
    }
}

} // namespace

MapSpec MapSpec::monomial(cplx c, int d) {
    if (c == cplx{0.0, 0.0}) throw std::invalid_argument("monomial coefficient must be nonzero");
    if (d < 1) throw std::invalid_argument("monomial degree must be >= 1");
    MapSpec m;
    m.kind = Kind::Monomial;
    m.c = c;
    m.d = d;
    return m;
}

MapSpec MapSpec::affine(double a, double b, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("affine clamp bounds must satisfy lo < hi");
    MapSpec m;
    m.kind = Kind::Affine;
    m.a = a;
    m.b = b;
    m.lo = lo;
    m.hi = hi;
    return m;
}

MapSpec MapSpec::constant(cplx v) {
    MapSpec m;
    m.kind = Kind::Const;
    m.v = v;
    return m;
}

MapSpec MapSpec::poly(std::vector<cplx> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("poly needs at least one coefficient");
    if (coeffs.size() > 1 && coeffs.back() == cplx{0.0, 0.0})
        throw std::invalid_argument("poly top coefficient must be nonzero");
    MapSpec m;
    m.kind = Kind::Poly;
    m.coeffs = std::move(coeffs);
    return m;
}

bool MapSpec::operator==(const MapSpec& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Monomial: return c == o.c && d == o.d;
        case Kind::Affine: return a == o.a && b == o.b && lo == o.lo && hi == o.hi;
        case Kind::Const: return v == o.v;
        case Kind::Poly: return coeffs == o.coeffs;
    }
    return false;
}

SpherePoint apply_map(const MapSpec& m, const SpherePoint& p) {
    switch (m.kind) {
        case MapSpec::Kind::Monomial: {
            if (!p.finite) return SpherePoint::infinity();
            cplx w = m.c * ipow(p.z, m.d);
            return finite_cplx(w) ? SpherePoint::at(w) : SpherePoint::infinity();
        }
        case MapSpec::Kind::Affine: {
            if (!p.finite) return SpherePoint::infinity();
            double y = m.a * p.z.real() + m.b;
            return SpherePoint::at(std::clamp(y, m.lo, m.hi));
        }
        case MapSpec::Kind::Const:
            return SpherePoint::at(m.v);
        case MapSpec::Kind::Poly: {
            if (m.coeffs.size() == 1) return SpherePoint::at(m.coeffs[0]);
            if (!p.finite) return SpherePoint::infinity();
            cplx acc{0.0, 0.0};
            for (auto it = m.coeffs.rbegin(); it != m.coeffs.rend(); ++it) acc = acc * p.z + *it;
            return finite_cplx(acc) ? SpherePoint::at(acc) : SpherePoint::infinity();
        }
    }
    throw std::logic_error("unreachable map kind");
}

MapSpec compose_monomials(const MapSpec& outer, const MapSpec& inner) {
    if (!outer.is_monomial() || !inner.is_monomial())
        throw unsupported_map("compose_monomials needs two monomials");
    const long long dd = static_cast<long long>(outer.d) * inner.d;
    if (dd > std::numeric_limits<int>::max())
        throw resource_error("composed monomial degree overflows");
    // c_o * (c_i z^{d_i})^{d_o} = c_o c_i^{d_o} z^{d_i d_o}
    cplx c = outer.c * ipow(inner.c, outer.d);
    if (!finite_cplx(c) || c == cplx{0.0, 0.0})
        throw resource_error("composed monomial coefficient left the double range");
    return MapSpec::monomial(c, static_cast<int>(dd));
}

LogAffine log_radius_action(const MapSpec& m) {
    if (!m.is_monomial()) throw unsupported_map("log-radius action is defined for monomials only");
    return {static_cast<double>(m.d), std::log(std::abs(m.c))};
}

LogAffine inverse_log_action(const MapSpec& m) {
    if (!m.is_monomial()) throw unsupported_map("log-radius action is defined for monomials only");
    const double d = static_cast<double>(m.d);
    return {1.0 / d, -std::log(std::abs(m.c)) / d};
}

std::string to_string(const MapSpec& m) {
    switch (m.kind) {
        case MapSpec::Kind::Monomial:
            return "monomial " + fmt_cplx(m.c) + " " + std::to_string(m.d);
        case MapSpec::Kind::Affine:
            return "affine " + fmt_double(m.a) + " " + fmt_double(m.b) + " " + fmt_double(m.lo) +
                   " " + fmt_double(m.hi);
        case MapSpec::Kind::Const:
            return "const " + fmt_cplx(m.v);
        case MapSpec::Kind::Poly: {
            std::string out = "poly";
            for (const auto& c : m.coeffs) out += " " + fmt_cplx(c);
            return out;
        }
    }
    throw std::logic_error("unreachable map kind");
}

MapSpec parse_map(const std::string& text) {
    std::istringstream in(text);
    std::string head;
    if (!(in >> head)) throw std::invalid_argument("empty map spec");
    std::vector<std::string> toks;
    for (std::string t; in >> t;) toks.push_back(t);

    if (head == "monomial") {
        if (toks.size() != 2) throw std::invalid_argument("monomial wants: monomial <c> <d>");
        int d = 0;
        try {
            d = std::stoi(toks[1]);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad monomial degree '" + toks[1] + "'");
        }
        return MapSpec::monomial(parse_cplx(toks[0]), d);
    }
    if (head == "affine") {
        if (toks.size() != 4) throw std::invalid_argument("affine wants: affine <a> <b> <lo> <hi>");
        return MapSpec::affine(parse_cplx(toks[0]).real(), parse_cplx(toks[1]).real(),
                               parse_cplx(toks[2]).real(), parse_cplx(toks[3]).real());
    }
    if (head == "const") {
        if (toks.size() != 1) throw std::invalid_argument("const wants: const <v>");
        return MapSpec::constant(parse_cplx(toks[0]));
    }
    if (head == "poly") {
        if (toks.empty()) throw std::invalid_argument("poly wants at least one coefficient");
        std::vector<cplx> cs;
        cs.reserve(toks.size());
        for (const auto& t : toks) cs.push_back(parse_cplx(t));
        return MapSpec::poly(std::move(cs));
    }
    throw std::invalid_argument("unknown map family '" + head + "'");
}

} // namespace rscc
