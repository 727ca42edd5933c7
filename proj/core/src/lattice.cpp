#include "chainlattice/lattice.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>

#include "chainlattice/errors.hpp"

namespace chainlattice {

namespace {

constexpr int kBinomialRows = 63;

const std::array<std::array<std::uint64_t, kBinomialRows>, kBinomialRows>& binomial_table()
{
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kBinomialRows>, kBinomialRows> t{};
        for (int n = 0; n < kBinomialRows; ++n) {
            t[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
            }
        }
        return t;
    }();
    return table;
}

bool lex_less_same_size(SubsetCode a, SubsetCode b)
{
    const SubsetCode diff = a ^ b;
    return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

}  // namespace

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (n >= kBinomialRows) {
        throw DomainError("binomial: n=" + std::to_string(n) + " exceeds the 64-bit table");
    }
    return binomial_table()[n][k];
}

BigInt big_binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    BigInt result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return result;
}

BigInt factorial(int n)
{
    if (n < 0) {
        throw DomainError("factorial: negative argument");
    }
    BigInt result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    return result;
}

BigInt falling_factorial(int s, int t)
{
    if (t < 0) {
        throw DomainError("falling_factorial: negative length");
    }
    if (t > s) {
        return 0;
    }
    BigInt result = 1;
    for (int i = 0; i < t; ++i) {
        result *= s - i;
    }
    return result;
}

std::string LevelDistance::str() const
{
    if (twice_ % 2 == 0) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

std::uint64_t sigma(int n, int r)
{
    if (n < 0 || n > 62 || r < 0 || r > n + 1) {
        throw DomainError("sigma: layer count r=" + std::to_string(r) + " outside [0, n+1]");
    }
    if (r == 0) {
        return 0;
    }
    // ceil((n-r+1)/2) .. ceil((n+r-1)/2)
    const int lo = (n - r + 2) / 2;
    const int hi = (n + r) / 2;
    std::uint64_t total = 0;
    for (int i = lo; i <= hi; ++i) {
        total += binomial(n, i);
    }
    return total;
}

int threshold_layers(int n, std::uint64_t M)
{
    if (n < 0 || n > 62) {
        throw DomainError("threshold_layers: n out of range");
    }
    if (M < 1 || M > (std::uint64_t{1} << n)) {
        throw DomainError("threshold_layers: M=" + std::to_string(M) + " outside [1, 2^n]");
    }
    for (int r = 1; r <= n + 1; ++r) {
        if (M <= sigma(n, r)) {
            return r;
        }
    }
    return n + 1;
}

bool lex_less(const Subset& a, const Subset& b)
{
    if (a.n != b.n) {
        throw DomainError("lex_less: subsets of different ground sets");
    }
    const int sa = cardinality(a.code);
    const int sb = cardinality(b.code);
    if (sa != sb) {
        return sa < sb;
    }
    return lex_less_same_size(a.code, b.code);
}

std::uint64_t lex_rank(int n, SubsetCode a)
{
    const int k = cardinality(a);
    std::uint64_t rank = 0;
    int placed = 0;
    for (int i = 1; i <= n && placed < k; ++i) {
        if ((a >> (i - 1)) & 1u) {
            ++placed;
        } else {
            // Sets agreeing with a below i and containing i come first.
            rank += binomial(n - i, k - placed - 1);
        }
    }
    return rank;
}

CenteredOrderKey centered_key(int n, SubsetCode a)
{
    const int size = cardinality(a);
    return CenteredOrderKey{LevelDistance::of(n, size), -size, lex_rank(n, a)};
}

// ---------------------------------------------------------------------------
// Family

Family::Family(int n) : n_(n)
{
    require_envelope(n, "Family");
    const std::uint64_t words = ((std::uint64_t{1} << n) + 63) / 64;
    bits_.assign(words, 0);
}

Family Family::full(int n)
{
    Family f(n);
    const std::uint64_t u = f.universe();
    std::fill(f.bits_.begin(), f.bits_.end(), ~std::uint64_t{0});
    if (u < 64) {
        f.bits_[0] = (std::uint64_t{1} << u) - 1;
    }
    f.size_ = u;
    return f;
}

Family Family::layer(int n, int size)
{
    Family f(n);
    if (size < 0 || size > n) {
        return f;
    }
    const std::uint64_t u = f.universe();
    for (std::uint64_t c = 0; c < u; ++c) {
        if (std::popcount(c) == size) {
            f.insert(static_cast<SubsetCode>(c));
        }
    }
    return f;
}

Family Family::from_codes(int n, std::span<const SubsetCode> codes)
{
    Family f(n);
    for (SubsetCode c : codes) {
        f.insert(c);
    }
    return f;
}

void Family::require_code(SubsetCode code) const
{
    if (code >= universe()) {
        throw DomainError("Family: subset code " + std::to_string(code) + " outside P(" + std::to_string(n_) + ")");
    }
}

void Family::require_same_n(const Family& other) const
{
    if (n_ != other.n_) {
        throw DomainError("Family: ground-set sizes differ");
    }
}

bool Family::insert(SubsetCode code)
{
    require_code(code);
    std::uint64_t& word = bits_[code >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (code & 63);
    if ((word & mask) != 0) {
        return false;
    }
    word |= mask;
    ++size_;
    return true;
}

bool Family::erase(SubsetCode code)
{
    require_code(code);
    std::uint64_t& word = bits_[code >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (code & 63);
    if ((word & mask) == 0) {
        return false;
    }
    word &= ~mask;
    --size_;
    return true;
}

std::vector<SubsetCode> Family::codes() const
{
    std::vector<SubsetCode> out;
    out.reserve(size_);
    for_each([&](SubsetCode c) { out.push_back(c); });
    return out;
}

bool Family::is_subset_of(const Family& other) const
{
    require_same_n(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if ((bits_[i] & ~other.bits_[i]) != 0) {
            return false;
        }
    }
    return true;
}

namespace {

template <class Op>
Family combine(const Family& a, std::span<const std::uint64_t> bw, Op op)
{
    const auto aw = a.words();
    Family out(a.n());
    for (std::size_t i = 0; i < aw.size(); ++i) {
        std::uint64_t word = op(aw[i], bw[i]);
        while (word != 0) {
            const int bit = std::countr_zero(word);
            out.insert(static_cast<SubsetCode>((i << 6) | static_cast<std::size_t>(bit)));
            word &= word - 1;
        }
    }
    return out;
}

}  // namespace

Family Family::operator|(const Family& other) const
{
    require_same_n(other);
    return combine(*this, other.words(), [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

Family Family::operator&(const Family& other) const
{
    require_same_n(other);
    return combine(*this, other.words(), [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

Family Family::operator-(const Family& other) const
{
    require_same_n(other);
    return combine(*this, other.words(), [](std::uint64_t x, std::uint64_t y) { return x & ~y; });
}

int Family::min_size() const
{
    int best = -1;
    for_each([&](SubsetCode c) {
        const int s = cardinality(c);
        if (best < 0 || s < best) {
            best = s;
        }
    });
    return best;
}

int Family::max_size() const
{
    int best = -1;
    for_each([&](SubsetCode c) { best = std::max(best, cardinality(c)); });
    return best;
}

// ---------------------------------------------------------------------------
// Centered families

std::vector<SubsetCode> centered_order(const Family& ambient)
{
    const int n = ambient.n();
    std::vector<std::vector<SubsetCode>> layers(static_cast<std::size_t>(n) + 1);
    ambient.for_each([&](SubsetCode c) { layers[static_cast<std::size_t>(cardinality(c))].push_back(c); });

    std::vector<int> sizes(static_cast<std::size_t>(n) + 1);
    for (int s = 0; s <= n; ++s) {
        sizes[static_cast<std::size_t>(s)] = s;
    }
    std::sort(sizes.begin(), sizes.end(),
              [n](int x, int y) { return layer_priority(n, x) < layer_priority(n, y); });

    std::vector<SubsetCode> order;
    order.reserve(ambient.size());
    for (int s : sizes) {
        auto& members = layers[static_cast<std::size_t>(s)];
        std::sort(members.begin(), members.end(), lex_less_same_size);
        order.insert(order.end(), members.begin(), members.end());
    }
    return order;
}

Family centered_family(const Family& ambient, std::size_t Q)
{
    if (Q > ambient.size()) {
        throw DomainError("centered_family: Q=" + std::to_string(Q) + " exceeds |P'|=" +
                          std::to_string(ambient.size()));
    }
    Family out(ambient.n());
    if (Q == ambient.size()) {
        return ambient;
    }
    const auto order = centered_order(ambient);
    for (std::size_t i = 0; i < Q; ++i) {
        out.insert(order[i]);
    }
    return out;
}

Family centered_family(int n, std::size_t Q)
{
    return centered_family(Family::full(n), Q);
}

bool is_centered(const Family& ambient, const Family& F)
{
    if (!F.is_subset_of(ambient)) {
        throw DomainError("is_centered: F is not contained in P'");
    }
    const int n = ambient.n();
    constexpr std::pair<int, int> kNone{std::numeric_limits<int>::min(), 0};
    std::pair<int, int> worstInside = kNone;
    std::pair<int, int> bestOutside{std::numeric_limits<int>::max(), 0};
    ambient.for_each([&](SubsetCode c) {
        const auto p = layer_priority(n, cardinality(c));
        if (F.contains(c)) {
            worstInside = std::max(worstInside, p);
        } else {
            bestOutside = std::min(bestOutside, p);
        }
    });
    return worstInside <= bestOutside;
}

Family upper_shadow(const Family& F, int targetLevel)
{
    const int n = F.n();
    if (targetLevel < 0 || targetLevel > n) {
        throw DomainError("upper_shadow: target level outside [0, n]");
    }
    if (F.empty()) {
        return Family(n);
    }
    const int level = F.min_size();
    if (level != F.max_size()) {
        throw DomainError("upper_shadow: input family spans several layers");
    }
    if (level >= targetLevel) {
        throw DomainError("upper_shadow: input layer must lie strictly below the target level");
    }
    Family current = F;
    for (int s = level; s < targetLevel; ++s) {
        Family next(n);
        current.for_each([&](SubsetCode c) {
            for (int e = 0; e < n; ++e) {
                const SubsetCode bit = SubsetCode{1} << e;
                if ((c & bit) == 0) {
                    next.insert(c | bit);
                }
            }
        });
        current = std::move(next);
    }
    return current;
}

std::string format_subset(SubsetCode code)
{
    if (code == 0) {
        return "-";
    }
    std::string out;
    for (int e = 0; e < 32; ++e) {
        if ((code >> e) & 1u) {
            if (!out.empty()) {
                out += ',';
            }
            out += std::to_string(e + 1);
        }
    }
    return out;
}

SubsetCode parse_subset(std::string_view text, int n)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
            s.remove_prefix(1);
        }
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
            s.remove_suffix(1);
        }
        return s;
    };
    text = trim(text);
    if (text == "-" || text == "{}") {
        return 0;
    }
    if (text.empty()) {
        throw ParseError("empty subset text; use '-' for the empty set");
    }
    SubsetCode code = 0;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view token = trim(text.substr(0, comma));
        int element = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), element);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ParseError("invalid element '" + std::string(token) + "'");
        }
        if (element < 1 || element > n) {
            throw ParseError("element " + std::to_string(element) + " outside [1, " + std::to_string(n) + "]");
        }
        const SubsetCode bit = SubsetCode{1} << (element - 1);
        if ((code & bit) != 0) {
            throw ParseError("duplicate element " + std::to_string(element));
        }
        code |= bit;
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return code;
}

}  // namespace chainlattice
