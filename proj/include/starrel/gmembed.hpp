#ifndef STARREL_GMEMBED_HPP
#define STARREL_GMEMBED_HPP

#include <map>
#include <string>
#include <vector>

#include "starrel/ncexpr.hpp"

namespace starrel {

// Letter of the free group on doubled generators: each base generator x has
// a dotted copy and a barred copy, each invertible.
struct DecoratedLetter {
    GeneratorId base;
    bool dotted = true; // dotted vs barred copy
    int exponent = 1;   // +1 or -1

    bool operator==(const DecoratedLetter& o) const {
        return base == o.base && dotted == o.dotted && exponent == o.exponent;
    }
    bool operator<(const DecoratedLetter& o) const {
        if (base != o.base) return base < o.base;
        if (dotted != o.dotted) return dotted > o.dotted; // dotted first
        return exponent < o.exponent;
    }
};

// Freely reduced word; the empty word is the group identity.
struct GroupWord {
    std::vector<DecoratedLetter> letters;

    static GroupWord identity() { return {}; }
    static GroupWord reduced(std::vector<DecoratedLetter> raw);

    bool empty() const { return letters.empty(); }
    size_t length() const { return letters.size(); }
    GroupWord operator*(const GroupWord& o) const;
    GroupWord inverse() const;

    bool operator==(const GroupWord& o) const { return letters == o.letters; }
    bool operator<(const GroupWord& o) const {
        if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
        return std::lexicographical_compare(letters.begin(), letters.end(), o.letters.begin(),
                                            o.letters.end());
    }

    std::string to_string() const; // e.g. "d:x^-1 b:x"
};

// Finitely supported complex combination of reduced words.
class GroupAlgebraElement {
  public:
    using Terms = std::map<GroupWord, Complex>;

    GroupAlgebraElement() = default;

    static GroupAlgebraElement zero() { return {}; }
    static GroupAlgebraElement unit();
    static GroupAlgebraElement word(GroupWord w, Complex c = Complex(1.0, 0.0));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Complex coeff(const GroupWord& w) const;
    void add_term(const GroupWord& w, Complex c);

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    GroupAlgebraElement scaled(Complex c) const;
    GroupAlgebraElement adjoint() const; // reverse, invert, conjugate

    /// Drop terms that are roundoff residue of Gaussian-integer arithmetic.
    void prune(double tol = 1e-12);

    bool equals(const GroupAlgebraElement& o, double tol = 1e-12) const;

    std::string to_string() const;

  private:
    Terms terms_;
};

/// The Goodearl-Menal map: x -> dot(x) + bar(x), extended as a
/// *-homomorphism. embed(p) = 0 iff p = 0.
GroupAlgebraElement embed(const StarPolynomial& p);

/// Decorate y1 y2 y3 ... as dot, bar, dot, ...; a starred letter carries
/// exponent -1.
GroupWord alternating_word(const Monomial& m);

/// Recover p's coefficient map from embed(p) alone, peeling degrees from the
/// top: at each stage the maximal-length alternating-pattern words carry
/// exactly the top monomial coefficients.
std::map<Monomial, Complex, MonomialLess> alternating_certificate(const StarPolynomial& p);

/// Exact zero test through the embedding.
bool is_zero_certified(const StarPolynomial& p);

} // namespace starrel

#endif
