#include "svao/ring.hpp"

#include <sstream>

namespace svao {

int SymbolTable::add_even(const std::string& name)
{
    if (frozen_)
        throw std::logic_error("SymbolTable frozen");
    even_names.push_back(name);
    return n_even() - 1;
}

int SymbolTable::add_odd(const std::string& name)
{
    if (frozen_)
        throw std::logic_error("SymbolTable frozen");
    if (n_odd() >= 32)
        throw std::invalid_argument("too many odd symbols (32 max)");
    odd_names.push_back(name);
    return n_odd() - 1;
}

void SymbolTable::freeze()
{
    if (!frozen_) {
        form_.resize(static_cast<size_t>(n_odd()) * n_odd());
        frozen_ = true;
    }
}

void SymbolTable::set_form(int a, int b, int coeff, int even_id)
{
    freeze();
    form_[a * n_odd() + b] = FormEntry{even_id, coeff};
    form_[b * n_odd() + a] = FormEntry{even_id, coeff};
}

namespace {

// word * symbol s, multiplying from the right; recursion peels the largest
// letter of the word.
void word_times_symbol(const SymbolTable& tab, const Rat& c,
                       const std::vector<int32_t>& ev, uint32_t word, int s,
                       std::vector<OddProd>& out)
{
    uint32_t sbit = 1u << s;
    uint32_t higher = word & ~(sbit | (sbit - 1));
    if (higher == 0) {
        if (!(word & sbit)) {
            out.push_back({c, ev, word | sbit});
            return;
        }
        // collision: x_s x_s = form(s,s)/2
        const auto& f = tab.form(s, s);
        if (f.coeff == 0)
            return;
        auto ev2 = ev;
        ev2[f.even] += 1;
        out.push_back({c * rat(f.coeff, 2), ev2, word & ~sbit});
        return;
    }
    int t = 31 - __builtin_clz(higher);  // largest letter, t > s
    uint32_t rest = word & ~(1u << t);
    // w' t s = -(w' s) t + w' {t,s}
    std::vector<OddProd> sub;
    word_times_symbol(tab, c, ev, rest, s, sub);
    for (auto& p : sub)
        out.push_back({-p.c, p.ev_delta, p.word | (1u << t)});
    const auto& f = tab.form(t, s);
    if (f.coeff != 0) {
        auto ev2 = ev;
        ev2[f.even] += 1;
        out.push_back({c * Rat(f.coeff), ev2, rest});
    }
}

}  // namespace

std::vector<OddProd> mul_odd_words(const SymbolTable& tab, uint32_t a, uint32_t b)
{
    std::vector<OddProd> cur{{Rat(1), std::vector<int32_t>(tab.n_even(), 0), a}};
    for (int s = 0; s < tab.n_odd(); ++s) {
        if (!(b & (1u << s)))
            continue;
        std::vector<OddProd> next;
        for (auto& p : cur)
            word_times_symbol(tab, p.c, p.ev_delta, p.word, s, next);
        cur = std::move(next);
    }
    return cur;
}

Poly Poly::one(TablePtr tab)
{
    Poly p(std::move(tab));
    Mono m;
    m.ev.assign(p.tab_->n_even(), 0);
    p.t_[m] = Rat(1);
    return p;
}

Poly Poly::constant(TablePtr tab, const Rat& c)
{
    Poly p = one(std::move(tab));
    return p * c;
}

Poly Poly::even_gen(TablePtr tab, int id, int exp)
{
    Poly p(std::move(tab));
    Mono m;
    m.ev.assign(p.tab_->n_even(), 0);
    m.ev[id] = exp;
    p.t_[m] = Rat(1);
    return p;
}

Poly Poly::odd_gen(TablePtr tab, int id)
{
    Poly p(std::move(tab));
    Mono m;
    m.ev.assign(p.tab_->n_even(), 0);
    m.odd = 1u << id;
    p.t_[m] = Rat(1);
    return p;
}

void Poly::add_term(const Mono& m, const Rat& c)
{
    if (svao::is_zero(c))
        return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second += c;
        if (svao::is_zero(it->second))
            t_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const
{
    Poly r = *this;
    for (auto& [m, c] : o.t_)
        r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const
{
    Poly r = *this;
    for (auto& [m, c] : o.t_)
        r.add_term(m, -c);
    return r;
}

Poly Poly::operator*(const Rat& c) const
{
    Poly r(tab_);
    if (svao::is_zero(c))
        return r;
    for (auto& [m, k] : t_)
        r.t_[m] = k * c;
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    if (tab_.get() != o.tab_.get())
        throw std::invalid_argument("Poly::mul: table mismatch");
    Poly r(tab_);
    for (auto& [ma, ca] : t_) {
        for (auto& [mb, cb] : o.t_) {
            auto prods = mul_odd_words(*tab_, ma.odd, mb.odd);
            for (auto& p : prods) {
                Mono m;
                m.ev.resize(tab_->n_even());
                for (int i = 0; i < tab_->n_even(); ++i)
                    m.ev[i] = ma.ev[i] + mb.ev[i] + p.ev_delta[i];
                m.odd = p.word;
                r.add_term(m, ca * cb * p.c);
            }
        }
    }
    return r;
}

bool Poly::operator==(const Poly& o) const
{
    return t_ == o.t_;
}

int Poly::parity_or(int dflt) const
{
    int par = -1;
    for (auto& [m, c] : t_) {
        int p = m.parity();
        if (par == -1)
            par = p;
        else if (par != p)
            return -2;  // mixed
    }
    return par == -1 ? dflt : par;
}

Poly Poly::deriv_even(int id) const
{
    Poly r(tab_);
    for (auto& [m, c] : t_) {
        if (m.ev[id] == 0)
            continue;
        Mono m2 = m;
        m2.ev[id] -= 1;
        r.add_term(m2, c * Rat(m.ev[id]));
    }
    return r;
}

Poly Poly::deriv_odd(int id) const
{
    Poly r(tab_);
    uint32_t bit = 1u << id;
    for (auto& [m, c] : t_) {
        if (!(m.odd & bit))
            continue;
        int before = __builtin_popcount(m.odd & (bit - 1));
        Mono m2 = m;
        m2.odd &= ~bit;
        r.add_term(m2, (before & 1) ? -c : c);
    }
    return r;
}

Poly Poly::pow(int n) const
{
    Poly r = one(tab_);
    for (int i = 0; i < n; ++i)
        r = r * (*this);
    return r;
}

Poly Poly::substitute(const TablePtr& target, const std::vector<Poly>& even_images,
                      const std::vector<Poly>& odd_images) const
{
    for (int i = 0; i < tab_->n_even(); ++i)
        if (even_images[i].parity_or(0) != 0)
            throw std::invalid_argument("substitute: even image not even");
    for (int i = 0; i < tab_->n_odd(); ++i)
        if (odd_images[i].parity_or(1) != 1)
            throw std::invalid_argument("substitute: odd image not odd");
    Poly r(target);
    for (auto& [m, c] : t_) {
        Poly acc = Poly::constant(target, c);
        for (int i = 0; i < tab_->n_even(); ++i)
            for (int k = 0; k < m.ev[i]; ++k)
                acc = acc * even_images[i];
        for (int i = 0; i < tab_->n_odd(); ++i)
            if (m.odd & (1u << i))
                acc = acc * odd_images[i];
        r = r + acc;
    }
    return r;
}

std::string Poly::str() const
{
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : t_) {
        std::string cs = rat_str(c);
        if (!first)
            os << (cs[0] == '-' ? " - " : " + ");
        else if (cs[0] == '-')
            os << "-";
        std::string abs = cs[0] == '-' ? cs.substr(1) : cs;
        std::vector<std::string> factors;
        for (int i = 0; i < tab_->n_even(); ++i) {
            if (m.ev[i] == 0)
                continue;
            std::string f = tab_->even_names[i];
            if (m.ev[i] > 1)
                f += "^" + std::to_string(m.ev[i]);
            factors.push_back(f);
        }
        for (int i = 0; i < tab_->n_odd(); ++i)
            if (m.odd & (1u << i))
                factors.push_back(tab_->odd_names[i]);
        if (factors.empty()) {
            os << abs;
        } else {
            if (abs != "1")
                os << abs << "*";
            for (size_t i = 0; i < factors.size(); ++i)
                os << (i ? "*" : "") << factors[i];
        }
        first = false;
    }
    return os.str();
}

}  // namespace svao
