#pragma once

#include "svao/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace svao {

// A finitely generated superalgebra presented by even symbols (commuting,
// arbitrary exponents) and odd symbols (one bit each), together with a
// symmetric bilinear form recording anticommutators:
//
//     x_i x_j + x_j x_i = form(i,j) = coeff * even_symbol     (odd i, j)
//
// form == 0 gives a Grassmann algebra; the K-flavor relations
// (theta^i theta^i = -lambda, S^i S^i = T, {S^i, theta^i} = 2 lambda) are all
// instances with a single even symbol on the right. Normal form: even
// exponent vector plus an ascending odd word, so multiplication is a signed
// merge with Clifford corrections.
class SymbolTable {
public:
    struct FormEntry {
        int even = -1;  // even symbol id, -1 = zero
        int coeff = 0;
    };

    std::vector<std::string> even_names;
    std::vector<std::string> odd_names;

    int add_even(const std::string& name);
    int add_odd(const std::string& name);
    void set_form(int odd_a, int odd_b, int coeff, int even_id);

    int n_even() const { return static_cast<int>(even_names.size()); }
    int n_odd() const { return static_cast<int>(odd_names.size()); }
    const FormEntry& form(int a, int b) const { return form_[a * n_odd() + b]; }

    void freeze();  // fix sizes; form lookups valid afterwards

private:
    std::vector<FormEntry> form_;
    bool frozen_ = false;
};

using TablePtr = std::shared_ptr<const SymbolTable>;

struct Mono {
    std::vector<int32_t> ev;  // exponents, size == table.n_even()
    uint32_t odd = 0;         // bit i = odd symbol i, word read in ascending id order

    int parity() const { return __builtin_popcount(odd) & 1; }
    bool operator<(const Mono& o) const
    {
        if (ev != o.ev)
            return ev < o.ev;
        return odd < o.odd;
    }
    bool operator==(const Mono& o) const { return ev == o.ev && odd == o.odd; }
};

class Poly {
public:
    Poly() = default;
    explicit Poly(TablePtr tab) : tab_(std::move(tab)) {}

    static Poly zero(TablePtr tab) { return Poly(std::move(tab)); }
    static Poly one(TablePtr tab);
    static Poly even_gen(TablePtr tab, int id, int exp = 1);
    static Poly odd_gen(TablePtr tab, int id);
    static Poly constant(TablePtr tab, const Rat& c);

    const TablePtr& table() const { return tab_; }
    const std::map<Mono, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Mono& m, const Rat& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    Poly operator-() const { return *this * Rat(-1); }
    bool operator==(const Poly& o) const;

    // -1 = not pure / zero treated as either
    int parity_or(int dflt) const;

    // Graded left derivative with respect to one symbol.
    Poly deriv_even(int id) const;
    Poly deriv_odd(int id) const;

    // Map every symbol through `even_images` / `odd_images` into the target
    // table, multiplying factor images in canonical word order (evens first,
    // then the odd word ascending). Odd images must be odd, even images even.
    Poly substitute(const TablePtr& target, const std::vector<Poly>& even_images,
                    const std::vector<Poly>& odd_images) const;

    Poly pow(int n) const;

    std::string str() const;  // deterministic rendering, table names

private:
    TablePtr tab_;
    std::map<Mono, Rat> t_;
};

// Product of two odd words with corrections; exposed for tests.
struct OddProd {
    Rat c;
    std::vector<int32_t> ev_delta;
    uint32_t word;
};
std::vector<OddProd> mul_odd_words(const SymbolTable& tab, uint32_t a, uint32_t b);

}  // namespace svao
