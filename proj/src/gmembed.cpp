#include "starrel/gmembed.hpp"

#include <cmath>
#include <sstream>

namespace starrel {

GroupWord GroupWord::reduced(std::vector<DecoratedLetter> raw) {
    GroupWord out;
    for (auto& l : raw) {
        if (!out.letters.empty()) {
            const DecoratedLetter& last = out.letters.back();
            if (last.base == l.base && last.dotted == l.dotted &&
                last.exponent == -l.exponent) {
                out.letters.pop_back();
                continue;
            }
        }
        out.letters.push_back(std::move(l));
    }
    return out;
}

GroupWord GroupWord::operator*(const GroupWord& o) const {
    std::vector<DecoratedLetter> raw = letters;
    raw.insert(raw.end(), o.letters.begin(), o.letters.end());
    return reduced(std::move(raw));
}

GroupWord GroupWord::inverse() const {
    GroupWord out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        DecoratedLetter l = *it;
        l.exponent = -l.exponent;
        out.letters.push_back(std::move(l));
    }
    return out;
}

std::string GroupWord::to_string() const {
    if (letters.empty()) return "e";
    std::ostringstream os;
    bool first = true;
    for (const auto& l : letters) {
        if (!first) os << " ";
        os << (l.dotted ? "d:" : "b:") << l.base.token();
        if (l.exponent == -1) os << "^-1";
        first = false;
    }
    return os.str();
}

GroupAlgebraElement GroupAlgebraElement::unit() { return word(GroupWord::identity()); }

GroupAlgebraElement GroupAlgebraElement::word(GroupWord w, Complex c) {
    GroupAlgebraElement out;
    out.add_term(std::move(w), c);
    return out;
}

Complex GroupAlgebraElement::coeff(const GroupWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void GroupAlgebraElement::add_term(const GroupWord& w, Complex c) {
    if (c == Complex(0.0, 0.0)) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    GroupAlgebraElement out = *this;
    for (const auto& [w, c] : o.terms_) out.add_term(w, c);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    GroupAlgebraElement out = *this;
    for (const auto& [w, c] : o.terms_) out.add_term(w, -c);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    GroupAlgebraElement out;
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) out.add_term(wa * wb, ca * cb);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::scaled(Complex c) const {
    GroupAlgebraElement out;
    for (const auto& [w, a] : terms_) out.add_term(w, a * c);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::adjoint() const {
    GroupAlgebraElement out;
    for (const auto& [w, c] : terms_) out.add_term(w.inverse(), std::conj(c));
    return out;
}

void GroupAlgebraElement::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= tol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

bool GroupAlgebraElement::equals(const GroupAlgebraElement& o, double tol) const {
    GroupAlgebraElement d = *this - o;
    for (const auto& [w, c] : d.terms())
        if (std::abs(c) > tol) return false;
    return true;
}

std::string GroupAlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        os << complex_to_string(c) << " * " << w.to_string();
        first = false;
    }
    return os.str();
}

namespace {

GroupAlgebraElement letter_image(const Letter& l) {
    // x -> dot + bar; x* -> dot^-1 + bar^-1
    const int e = l.star ? -1 : 1;
    GroupAlgebraElement out;
    out.add_term(GroupWord{{DecoratedLetter{l.g, true, e}}}, Complex(1.0, 0.0));
    out.add_term(GroupWord{{DecoratedLetter{l.g, false, e}}}, Complex(1.0, 0.0));
    return out;
}

} // namespace

GroupAlgebraElement embed(const StarPolynomial& p) {
    GroupAlgebraElement out;
    for (const auto& [m, c] : p.terms()) {
        GroupAlgebraElement word_img = GroupAlgebraElement::unit();
        for (const auto& l : m) word_img = word_img * letter_image(l);
        out = out + word_img.scaled(c);
    }
    return out;
}

GroupWord alternating_word(const Monomial& m) {
    std::vector<DecoratedLetter> letters;
    letters.reserve(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        letters.push_back(DecoratedLetter{m[i].g, i % 2 == 0, m[i].star ? -1 : 1});
    GroupWord w = GroupWord::reduced(letters);
    // Alternating decorations cannot cancel.
    if (w.length() != m.size())
        throw Error(Errc::InvalidArgument, "alternating word reduced unexpectedly");
    return w;
}

namespace {

// Invert the alternating decoration of a word, if it has one.
bool undecorate(const GroupWord& w, Monomial* out) {
    Monomial m;
    m.reserve(w.length());
    for (size_t i = 0; i < w.length(); ++i) {
        const DecoratedLetter& l = w.letters[i];
        if (l.dotted != (i % 2 == 0)) return false;
        m.push_back(Letter{l.base, l.exponent == -1});
    }
    *out = std::move(m);
    return true;
}

} // namespace

std::map<Monomial, Complex, MonomialLess> alternating_certificate(const StarPolynomial& p) {
    std::map<Monomial, Complex, MonomialLess> cert;
    GroupAlgebraElement rem = embed(p);
    rem.prune();
    while (!rem.is_zero()) {
        const size_t top = rem.terms().rbegin()->first.length();
        // Maximal-length alternating words carry the top coefficients exactly.
        StarPolynomial layer;
        for (const auto& [w, c] : rem.terms()) {
            if (w.length() != top) continue;
            Monomial m;
            if (undecorate(w, &m)) {
                cert[m] = c;
                layer.add_term(m, c);
            }
        }
        if (layer.is_zero())
            throw Error(Errc::InvalidArgument,
                        "no alternating word at length " + std::to_string(top) +
                            "; embedding pattern violated");
        rem = rem - embed(layer);
        rem.prune();
        if (!rem.is_zero() && rem.terms().rbegin()->first.length() >= top)
            throw Error(Errc::InvalidArgument, "degree did not decrease while peeling");
    }
    return cert;
}

bool is_zero_certified(const StarPolynomial& p) {
    GroupAlgebraElement e = embed(p);
    e.prune();
    return e.is_zero();
}

} // namespace starrel
