#include "fsb/monomial.hpp"

#include <algorithm>
#include <sstream>

namespace fsb {

bool factor_less(const Factor& a, const Factor& b, int ell) {
    if (a.depth != b.depth) return a.depth > b.depth;
    return color_less(a.color, b.color, ell);
}

Ordering compare_shapes(const Shape& a, const Shape& b) {
    int max_depth = 0;
    if (!a.counts.empty()) max_depth = std::max(max_depth, a.counts.rbegin()->first);
    if (!b.counts.empty()) max_depth = std::max(max_depth, b.counts.rbegin()->first);
    for (int j = 0; j <= max_depth; ++j) {
        auto ia = a.counts.find(j), ib = b.counts.find(j);
        int ca = ia == a.counts.end() ? 0 : ia->second;
        int cb = ib == b.counts.end() ? 0 : ib->second;
        if (ca != cb) return ca < cb ? Ordering::LT : Ordering::GT;
    }
    return Ordering::EQ;
}

Monomial::Monomial(std::vector<Factor> factors, int ell) : factors_(std::move(factors)), ell_(ell) {
    for (const Factor& f : factors_) {
        if (f.depth < 0) throw std::invalid_argument("negative factor depth");
        if (f.color.index < 2 || f.color.index > ell) throw std::invalid_argument("color out of range");
    }
    std::sort(factors_.begin(), factors_.end(),
              [ell](const Factor& a, const Factor& b) { return factor_less(a, b, ell); });
}

Monomial normalize(std::vector<Factor> factors, int ell) {
    return Monomial(std::move(factors), ell);
}

bool Monomial::factors_strict_less(const Monomial& o) const {
    auto key = [this](const Factor& f) {
        return std::tuple<int, int>(f.depth, gamma_position(f.color, ell_));
    };
    return std::lexicographical_compare(
        factors_.begin(), factors_.end(), o.factors_.begin(), o.factors_.end(),
        [&](const Factor& a, const Factor& b) { return key(a) < key(b); });
}

int Monomial::degree() const {
    int d = 0;
    for (const Factor& f : factors_) d -= f.depth;
    return d;
}

Weight Monomial::weight(const LatticeContext& ctx) const {
    Weight w = ctx.zero();
    for (const Factor& f : factors_) w += ctx.root_of(f.color);
    return w;
}

Shape Monomial::shape() const {
    Shape s;
    for (const Factor& f : factors_) s.counts[f.depth]++;
    return s;
}

bool Monomial::has_depth_zero() const {
    return !factors_.empty() && factors_.back().depth == 0;
}

std::vector<Factor> Monomial::factors_at_depth(int d) const {
    std::vector<Factor> out;
    for (const Factor& f : factors_)
        if (f.depth == d) out.push_back(f);
    return out;
}

std::string Monomial::str() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " ";
        os << factors_[i].str();
    }
    return os.str();
}

Monomial Monomial::parse(const std::string& text, int ell) {
    std::vector<Factor> fs;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "1") continue;
        std::size_t p = 0;
        if (tok[p] != 'g') throw std::invalid_argument("bad factor '" + tok + "'");
        ++p;
        bool neg = p < tok.size() && tok[p] == '~';
        if (neg) ++p;
        std::size_t start = p;
        while (p < tok.size() && std::isdigit(static_cast<unsigned char>(tok[p]))) ++p;
        if (start == p) throw std::invalid_argument("bad factor '" + tok + "'");
        int idx = std::stoi(tok.substr(start, p - start));
        if (p >= tok.size() || tok[p] != '(') throw std::invalid_argument("bad factor '" + tok + "'");
        ++p;
        std::size_t close = tok.find(')', p);
        if (close == std::string::npos || close + 1 != tok.size())
            throw std::invalid_argument("bad factor '" + tok + "'");
        int mode = std::stoi(tok.substr(p, close - p));
        if (mode > 0) throw std::invalid_argument("factor mode must be <= 0 in '" + tok + "'");
        fs.push_back(Factor{Color{idx, neg}, -mode});
    }
    return Monomial(std::move(fs), ell);
}

Ordering compare(const Monomial& a, const Monomial& b) {
    Ordering s = compare_shapes(a.shape(), b.shape());
    if (s != Ordering::EQ) return s;
    // Same shape: compare colors from right to left.
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    int ell = a.ell();
    for (std::size_t r = 0; r < fa.size(); ++r) {
        const Color& ca = fa[fa.size() - 1 - r].color;
        const Color& cb = fb[fb.size() - 1 - r].color;
        if (!(ca == cb)) return color_less(ca, cb, ell) ? Ordering::LT : Ordering::GT;
    }
    return Ordering::EQ;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    std::vector<Factor> fs = a.factors();
    fs.insert(fs.end(), b.factors().begin(), b.factors().end());
    return Monomial(std::move(fs), a.empty() ? b.ell() : a.ell());
}

Monomial shift(const Monomial& m, int n) {
    std::vector<Factor> fs = m.factors();
    for (Factor& f : fs) f.depth += n;
    return Monomial(std::move(fs), m.ell());
}

std::optional<Monomial> unshift(const Monomial& m, int n) {
    std::vector<Factor> fs = m.factors();
    for (Factor& f : fs) {
        f.depth -= n;
        if (f.depth < 1) return std::nullopt;
    }
    return Monomial(std::move(fs), m.ell());
}

}  // namespace fsb
