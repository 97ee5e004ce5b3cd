#include "fsb/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace fsb {

Weight Weight::epsilon(std::size_t rank, std::size_t i) {
    Weight w(rank);
    w.c2_.at(i - 1) = 2;
    return w;
}

std::vector<Rat> Weight::coords() const {
    std::vector<Rat> out;
    out.reserve(c2_.size());
    for (int c : c2_) out.emplace_back(c, 2);
    for (auto& r : out) r.canonicalize();
    return out;
}

bool Weight::is_zero() const {
    return std::all_of(c2_.begin(), c2_.end(), [](int c) { return c == 0; });
}

bool Weight::is_integral() const {
    return std::all_of(c2_.begin(), c2_.end(), [](int c) { return c % 2 == 0; });
}

bool Weight::is_half_odd() const {
    return std::all_of(c2_.begin(), c2_.end(), [](int c) { return c % 2 != 0; });
}

int Weight::coord_sum_doubled() const {
    int s = 0;
    for (int c : c2_) s += c;
    return s;
}

Weight& Weight::operator+=(const Weight& o) {
    if (c2_.size() != o.c2_.size()) throw std::invalid_argument("rank mismatch");
    for (std::size_t i = 0; i < c2_.size(); ++i) c2_[i] += o.c2_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (c2_.size() != o.c2_.size()) throw std::invalid_argument("rank mismatch");
    for (std::size_t i = 0; i < c2_.size(); ++i) c2_[i] -= o.c2_[i];
    return *this;
}

Weight Weight::operator-() const {
    Weight w = *this;
    for (int& c : w.c2_) c = -c;
    return w;
}

Weight Weight::scaled(int k) const {
    Weight w = *this;
    for (int& c : w.c2_) c *= k;
    return w;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c2_.size(); ++i) {
        if (i) os << " ";
        if (c2_[i] % 2 == 0) {
            os << c2_[i] / 2;
        } else {
            os << c2_[i] << "/2";
        }
    }
    os << ")";
    return os.str();
}

Rat pairing(const Weight& x, const Weight& y) {
    if (x.rank() != y.rank()) throw std::invalid_argument("rank mismatch in pairing");
    long dot = 0;
    for (std::size_t i = 0; i < x.rank(); ++i)
        dot += static_cast<long>(x.doubled(i)) * y.doubled(i);
    Rat r(dot, 4);
    r.canonicalize();
    return r;
}

Color opposite(const Color& c) { return Color{c.index, !c.negative}; }

int gamma_position(const Color& c, int ell) {
    if (c.index < 2 || c.index > ell) throw std::invalid_argument("color index out of range");
    return c.negative ? 2 * ell - 1 - c.index : c.index - 2;
}

std::string coset_name(CosetClass c) {
    switch (c) {
        case CosetClass::Q: return "Q";
        case CosetClass::QOmega1: return "Q+omega1";
        case CosetClass::QOmegaLm1: return "Q+omega(l-1)";
        case CosetClass::QOmegaL: return "Q+omega(l)";
    }
    return "?";
}

LatticeContext::LatticeContext(int ell) : ell_(ell) {
    if (ell < 4) throw std::invalid_argument("rank out of range: D_ell needs ell >= 4");
    auto n = static_cast<std::size_t>(ell);
    simple_roots_.reserve(n);
    for (int i = 1; i < ell; ++i)
        simple_roots_.push_back(Weight::epsilon(n, i) - Weight::epsilon(n, i + 1));
    simple_roots_.push_back(Weight::epsilon(n, n - 1) + Weight::epsilon(n, n));

    fundamental_weights_.resize(n + 1, Weight(n));
    // omega_i = eps_1 + ... + eps_i for i <= ell-2; the two spinor weights
    // are half-sums with the sign of eps_ell flipped for omega_{ell-1}.
    for (int i = 1; i <= ell - 2; ++i) {
        Weight w(n);
        std::vector<int> c(n, 0);
        for (int k = 0; k < i; ++k) c[static_cast<std::size_t>(k)] = 2;
        fundamental_weights_[static_cast<std::size_t>(i)] = Weight::from_doubled(c);
    }
    {
        std::vector<int> c(n, 1);
        c[n - 1] = -1;
        fundamental_weights_[n - 1] = Weight::from_doubled(c);
        std::vector<int> d(n, 1);
        fundamental_weights_[n] = Weight::from_doubled(d);
    }
    theta_ = Weight::epsilon(n, 1) + Weight::epsilon(n, 2);

    for (int i = 2; i <= ell; ++i) gamma_set_.push_back(Color{i, false});
    for (int i = ell; i >= 2; --i) gamma_set_.push_back(Color{i, true});
}

Weight LatticeContext::root_of(const Color& c) const {
    if (c.index < 2 || c.index > ell_) throw std::invalid_argument("color index out of range");
    auto n = static_cast<std::size_t>(ell_);
    Weight e1 = Weight::epsilon(n, 1);
    Weight ei = Weight::epsilon(n, static_cast<std::size_t>(c.index));
    return c.negative ? e1 - ei : e1 + ei;
}

std::vector<Weight> LatticeContext::all_roots() const {
    std::vector<Weight> out;
    auto n = static_cast<std::size_t>(ell_);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            Weight a = Weight::epsilon(n, i), b = Weight::epsilon(n, j);
            out.push_back(a - b);
            out.push_back(b - a);
            out.push_back(a + b);
            out.push_back(-(a + b));
        }
    return out;
}

std::vector<Weight> LatticeContext::positive_roots() const {
    std::vector<Weight> out;
    auto n = static_cast<std::size_t>(ell_);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            Weight a = Weight::epsilon(n, i), b = Weight::epsilon(n, j);
            out.push_back(a - b);
            out.push_back(a + b);
        }
    return out;
}

bool LatticeContext::in_root_lattice(const Weight& w) const {
    return w.is_integral() && (w.coord_sum_doubled() / 2) % 2 == 0;
}

bool LatticeContext::in_weight_lattice(const Weight& w) const {
    return w.is_integral() || w.is_half_odd();
}

CosetClass LatticeContext::coset_class(const Weight& w) const {
    if (!in_weight_lattice(w)) throw std::invalid_argument("weight not in P");
    if (w.is_integral())
        return (w.coord_sum_doubled() / 2) % 2 == 0 ? CosetClass::Q : CosetClass::QOmega1;
    return in_root_lattice(w - fundamental_weight(ell_)) ? CosetClass::QOmegaL
                                                         : CosetClass::QOmegaLm1;
}

Weight LatticeContext::spinor_weight(const SpinorLabel& sigma) const {
    std::vector<int> c(static_cast<std::size_t>(ell_), -1);
    for (int i : sigma.sigma) {
        if (i < 1 || i > ell_) throw std::invalid_argument("spinor index out of range");
        c[static_cast<std::size_t>(i - 1)] = 1;
    }
    return Weight::from_doubled(c);
}

SpinorLabel LatticeContext::spinor_label(const Weight& w) const {
    SpinorLabel s;
    for (int i = 0; i < ell_; ++i) {
        int c = w.doubled(static_cast<std::size_t>(i));
        if (c == 1) s.sigma.push_back(i + 1);
        else if (c != -1) throw std::invalid_argument("not a pure spinor weight");
    }
    return s;
}

bool LatticeContext::is_dominant(const Weight& lambda) const {
    for (const Weight& a : simple_roots_)
        if (pairing(lambda, a) < 0) return false;
    return true;
}

Int LatticeContext::weyl_dimension(const Weight& lambda) const {
    // rho = (ell-1, ell-2, ..., 1, 0)
    std::vector<int> rho2(static_cast<std::size_t>(ell_));
    for (int i = 0; i < ell_; ++i) rho2[static_cast<std::size_t>(i)] = 2 * (ell_ - 1 - i);
    Weight rho = Weight::from_doubled(rho2);
    Weight lr = lambda + rho;
    Rat num(1), den(1);
    for (const Weight& a : positive_roots()) {
        num *= pairing(lr, a);
        den *= pairing(rho, a);
    }
    Rat d = num / den;
    d.canonicalize();
    if (d.get_den() != 1) throw std::runtime_error("weyl_dimension: non-integral result");
    return d.get_num();
}

}  // namespace fsb
