#include "fsb/weight_spec.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsb {

bool is_level1_index(int ell, int i) {
    return i == 0 || i == 1 || i == ell - 1 || i == ell;
}

WeightSpec WeightSpec::level1(int ell, int i) {
    if (!is_level1_index(ell, i))
        throw std::invalid_argument("L" + std::to_string(i) + " is not a level-1 weight");
    return WeightSpec(Kind::Level1, ell, i, 0);
}

WeightSpec WeightSpec::sum(int ell, int a, int b) {
    if (!is_level1_index(ell, a) || !is_level1_index(ell, b))
        throw std::invalid_argument("sum components must be level-1 weights");
    if (a > b) std::swap(a, b);
    return WeightSpec(Kind::Sum, ell, a, b);
}

WeightSpec WeightSpec::fundamental(int ell, int j) {
    if (j < 2 || j > ell - 2)
        throw std::invalid_argument("L" + std::to_string(j) + " is not a level-2 fundamental weight");
    return WeightSpec(Kind::Fundamental, ell, j, 0);
}

static int parse_index(const std::string& s, std::size_t& pos) {
    if (pos >= s.size() || s[pos] != 'L') throw std::invalid_argument("expected 'L'");
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected weight index after 'L'");
    return std::stoi(s.substr(start, pos - start));
}

WeightSpec WeightSpec::parse(int ell, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty weight spec");
    try {
        std::size_t pos = 0;
        if (s[0] == '2') {
            ++pos;
            int i = parse_index(s, pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return sum(ell, i, i);
        }
        int a = parse_index(s, pos);
        if (pos == s.size()) {
            if (is_level1_index(ell, a)) return level1(ell, a);
            return fundamental(ell, a);
        }
        if (s[pos] != '+') throw std::invalid_argument("expected '+'");
        ++pos;
        int b = parse_index(s, pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return sum(ell, a, b);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("bad weight spec '" + text + "': " + e.what());
    }
}

std::vector<int> WeightSpec::k_coefficients() const {
    std::vector<int> k(static_cast<std::size_t>(ell_) + 1, 0);
    switch (kind_) {
        case Kind::Level1: k[static_cast<std::size_t>(a_)] += 1; break;
        case Kind::Sum:
            k[static_cast<std::size_t>(a_)] += 1;
            k[static_cast<std::size_t>(b_)] += 1;
            break;
        case Kind::Fundamental: k[static_cast<std::size_t>(a_)] += 1; break;
    }
    return k;
}

std::string WeightSpec::str() const {
    switch (kind_) {
        case Kind::Level1: return "L" + std::to_string(a_);
        case Kind::Fundamental: return "L" + std::to_string(a_);
        case Kind::Sum: return "L" + std::to_string(a_) + "+L" + std::to_string(b_);
    }
    return "?";
}

}  // namespace fsb
