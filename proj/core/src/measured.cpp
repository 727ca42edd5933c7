#include "chainlattice/measured.hpp"

#include "chainlattice/errors.hpp"

namespace chainlattice {

Family middle_layers(int n, int d)
{
    if (d < 1 || d > n + 1) {
        throw DomainError("middle_layers: d must lie in [1, n+1]");
    }
    const int lo = (n - d + 2) / 2;
    const int hi = (n + d) / 2;
    Family out(n);
    for (std::uint64_t code = 0; code < out.universe(); ++code) {
        const int size = cardinality(static_cast<SubsetCode>(code));
        if (size >= lo && size <= hi) {
            out.insert(static_cast<SubsetCode>(code));
        }
    }
    return out;
}

MeasuredSubhypergraph::MeasuredSubhypergraph(int n, int d, int k) : n_(n), d_(d), k_(k), host_(middle_layers(n, d))
{
    if (k < 1) {
        throw DomainError("measured subhypergraph: k must be positive");
    }
}

MeasuredSubhypergraph MeasuredSubhypergraph::indicator(const Family& F, int d, int k)
{
    MeasuredSubhypergraph f(F.n(), d, k);
    f.defaultFamily_ = F & f.host_;
    return f;
}

bool MeasuredSubhypergraph::is_edge(std::span<const SubsetCode> sets) const
{
    if (sets.size() != static_cast<std::size_t>(k_)) {
        return false;
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!host_.contains(sets[i])) {
            return false;
        }
        if (i > 0 && (sets[i] == sets[i - 1] || (sets[i - 1] & ~sets[i]) != 0)) {
            return false;
        }
    }
    return true;
}

int MeasuredSubhypergraph::default_measure(std::span<const SubsetCode> sets) const
{
    if (!defaultFamily_) {
        return 0;
    }
    for (SubsetCode c : sets) {
        if (!defaultFamily_->contains(c)) {
            return 0;
        }
    }
    return 1;
}

Rational MeasuredSubhypergraph::measure(std::span<const SubsetCode> sets) const
{
    if (!explicit_.empty()) {
        const auto it = explicit_.find(Key(sets.begin(), sets.end()));
        if (it != explicit_.end()) {
            return it->second;
        }
    }
    return default_measure(sets);
}

void MeasuredSubhypergraph::set(std::span<const SubsetCode> sets, const Rational& raw)
{
    // Callers may hand in unreduced fractions; equality on mpq needs canonical form.
    Rational value = raw;
    value.canonicalize();
    if (!is_edge(sets)) {
        throw DomainError("measured subhypergraph: not a k-chain of the host");
    }
    if (value < 0 || value > 1) {
        throw DomainError("measured subhypergraph: measure outside [0,1]");
    }
    Key key(sets.begin(), sets.end());
    if (value == default_measure(sets)) {
        explicit_.erase(key);
    } else {
        explicit_[std::move(key)] = value;
    }
}

Rational MeasuredSubhypergraph::size() const
{
    Rational total = 0;
    if (defaultFamily_) {
        total = Rational(count_k_chains(*defaultFamily_, k_));
    }
    for (const auto& [key, value] : explicit_) {
        total += value - default_measure(key);
    }
    return total;
}

Rational MeasuredSubhypergraph::weighted_measure(const Family& ambient, const StepVector& a) const
{
    if (a.size() + 1 != static_cast<std::size_t>(k_)) {
        throw DomainError("weighted_measure: step vector length must be k-1");
    }
    Rational total = 0;
    if (defaultFamily_) {
        total = weighted_sum(*defaultFamily_ & ambient, a);
    }
    for (const auto& [key, value] : explicit_) {
        bool inside = true;
        for (std::size_t i = 0; i < key.size() && inside; ++i) {
            inside = ambient.contains(key[i]);
            if (inside && i > 0) {
                inside = cardinality(key[i]) - cardinality(key[i - 1]) >= a[i - 1];
            }
        }
        if (inside) {
            total += weight(Chain(n_, key)) * (value - default_measure(key));
        }
    }
    return total;
}

bool MeasuredSubhypergraph::operator==(const MeasuredSubhypergraph& other) const
{
    if (n_ != other.n_ || d_ != other.d_ || k_ != other.k_) {
        return false;
    }
    // Compare as functions: every chain touched by either side must agree.
    auto agrees = [](const MeasuredSubhypergraph& x, const MeasuredSubhypergraph& y) {
        for (const auto& [key, value] : x.explicit_) {
            if (y.measure(key) != value) {
                return false;
            }
        }
        return true;
    };
    if (!agrees(*this, other) || !agrees(other, *this)) {
        return false;
    }
    const Family empty(n_);
    const Family& mine = defaultFamily_ ? *defaultFamily_ : empty;
    const Family& theirs = other.defaultFamily_ ? *other.defaultFamily_ : empty;
    if (mine == theirs) {
        return true;
    }
    // Different defaults may still coincide on every k-chain.
    bool same = true;
    for_each_k_chain(mine | theirs, k_, [&](std::span<const SubsetCode> sets) {
        if (same && measure(sets) != other.measure(sets)) {
            same = false;
        }
    });
    return same;
}

}  // namespace chainlattice
