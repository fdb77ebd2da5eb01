#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace tsalg {

// Zero test used for pruning; overloaded for every coefficient type.
template <class C>
bool is_zero(const C& c);

/// Finitely supported map Key -> Coeff kept as a sorted vector with no zero
/// coefficients. The Tag parameter makes otherwise identical instantiations
/// (e.g. dilation indices vs. frequencies) distinct types.
template <class Key, class Coeff, class Tag>
class LinComb {
public:
    using key_type = Key;
    using coeff_type = Coeff;
    using Term = std::pair<Key, Coeff>;

    LinComb() = default;

    static LinComb single(Key k, Coeff c)
    {
        LinComb r;
        if (!is_zero(c))
            r.terms_.emplace_back(std::move(k), std::move(c));
        return r;
    }

    // Sorts, merges equal keys and drops zeros.
    static LinComb from_unsorted(std::vector<Term> raw)
    {
        std::sort(raw.begin(), raw.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        LinComb r;
        r.terms_.reserve(raw.size());
        for (auto& t : raw) {
            if (!r.terms_.empty() && r.terms_.back().first == t.first) {
                r.terms_.back().second += t.second;
            } else {
                if (!r.terms_.empty() && is_zero(r.terms_.back().second))
                    r.terms_.pop_back();
                r.terms_.push_back(std::move(t));
            }
        }
        if (!r.terms_.empty() && is_zero(r.terms_.back().second))
            r.terms_.pop_back();
        return r;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    const Coeff* find(const Key& k) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term& t, const Key& key) { return t.first < key; });
        if (it != terms_.end() && it->first == k)
            return &it->second;
        return nullptr;
    }

    void add(const Key& k, const Coeff& c)
    {
        if (is_zero(c))
            return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term& t, const Key& key) { return t.first < key; });
        if (it != terms_.end() && it->first == k) {
            it->second += c;
            if (is_zero(it->second))
                terms_.erase(it);
        } else {
            terms_.insert(it, Term{k, c});
        }
    }

    LinComb& operator+=(const LinComb& o) { return merge(o, false); }
    LinComb& operator-=(const LinComb& o) { return merge(o, true); }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }

    LinComb operator-() const
    {
        LinComb r = *this;
        for (auto& t : r.terms_)
            t.second = -t.second;
        return r;
    }

    // Multiplies every coefficient by s (s of any type with Coeff * S -> Coeff).
    template <class S>
    LinComb scaled(const S& s) const
    {
        LinComb r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Coeff c = t.second * s;
            if (!is_zero(c))
                r.terms_.emplace_back(t.first, std::move(c));
        }
        return r;
    }

    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }
    friend bool operator<(const LinComb& a, const LinComb& b)
    {
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const Term& x, const Term& y) {
                if (x.first < y.first) return true;
                if (y.first < x.first) return false;
                return x.second < y.second;
            });
    }

private:
    LinComb& merge(const LinComb& o, bool negate)
    {
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto i = terms_.begin();
        auto j = o.terms_.begin();
        while (i != terms_.end() || j != o.terms_.end()) {
            if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
                out.push_back(std::move(*i++));
            } else if (i == terms_.end() || j->first < i->first) {
                out.emplace_back(j->first, negate ? Coeff(-j->second) : j->second);
                ++j;
            } else {
                Coeff c = negate ? Coeff(i->second - j->second) : Coeff(i->second + j->second);
                if (!is_zero(c))
                    out.emplace_back(std::move(i->first), std::move(c));
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    std::vector<Term> terms_;
};

} // namespace tsalg
