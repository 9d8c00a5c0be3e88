#include "secantkit/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace secantkit {

Partition::Partition(std::vector<int> parts) {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must be nonincreasing");
    }
    size_ = std::accumulate(parts.begin(), parts.end(), 0);
    parts_ = std::move(parts);
}

Partition Partition::conjugate() const {
    std::vector<int> out;
    if (!parts_.empty()) {
        out.resize(parts_[0], 0);
        for (int p : parts_)
            for (int c = 0; c < p; ++c) ++out[c];
    }
    return Partition(out);
}

std::string Partition::to_string() const { return join_ints(parts_); }

Partition Partition::parse(const std::string& text) { return Partition(parse_int_list(text)); }

NPartition::NPartition(std::vector<Partition> components) : components_(std::move(components)) {}

std::vector<int> NPartition::profile() const {
    std::vector<int> out;
    for (const auto& c : components_) out.push_back(c.size());
    return out;
}

int NPartition::max_length() const {
    int m = 0;
    for (const auto& c : components_) m = std::max(m, c.length());
    return m;
}

std::string NPartition::to_string() const {
    std::string out;
    for (std::size_t j = 0; j < components_.size(); ++j) {
        if (j) out += '|';
        out += components_[j].to_string();
    }
    return out;
}

NPartition NPartition::parse(const std::string& text) {
    std::vector<Partition> comps;
    std::size_t start = 0;
    while (true) {
        auto bar = text.find('|', start);
        comps.push_back(Partition::parse(text.substr(start, bar - start)));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return NPartition(std::move(comps));
}

Shape::Shape(std::vector<int> delta_, int r_, int k_) : delta(std::move(delta_)), r(r_), k(k_) {
    if (delta.empty()) throw std::invalid_argument("shape needs at least one factor");
    for (int d : delta)
        if (d < 1) throw std::invalid_argument("shape degrees must be positive");
    if (r < 0) throw std::invalid_argument("shape degree r must be nonnegative");
    if (k < 1) throw std::invalid_argument("secant parameter k must be positive");
}

std::vector<int> Shape::profile() const {
    std::vector<int> out;
    for (int d : delta) out.push_back(r * d);
    return out;
}

std::string Shape::to_string() const { return "delta=" + join_ints(delta) + " r=" + std::to_string(r); }

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        auto b = token.find_first_not_of(" \t(");
        auto e = token.find_last_not_of(" \t)");
        if (b == std::string::npos) {
            if (!text.empty() && text.find_first_not_of(" \t()") != std::string::npos)
                throw std::invalid_argument("empty entry in integer list '" + text + "'");
            continue;
        }
        token = token.substr(b, e - b + 1);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer '" + token + "'");
        }
        if (used != token.size()) throw std::invalid_argument("bad integer '" + token + "'");
        out.push_back(value);
    }
    return out;
}

std::string join_ints(const std::vector<int>& values, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

namespace {

void partitions_rec(int remaining, int max_part, int parts_left, std::vector<int>& cur,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (parts_left == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        if (static_cast<long>(p) * parts_left < remaining) break;
        cur.push_back(p);
        partitions_rec(remaining - p, p, parts_left - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions(int m, int max_parts) {
    if (m < 0 || max_parts < 1) throw std::invalid_argument("partitions: need m >= 0, max_parts >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    partitions_rec(m, m, max_parts, cur, out);
    return out;
}

std::int64_t partition_count(int m) {
    std::vector<std::int64_t> p(m + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= m; ++part)
        for (int s = part; s <= m; ++s) p[s] += p[s - part];
    return p[m];
}

Integer factorial(int m) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(m));
    return out;
}

Integer binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Integer dim_schur(const Partition& lam, int m) {
    if (lam.length() > m) return 0;
    auto conj = lam.conjugate();
    Integer num = 1, den = 1;
    for (int i = 0; i < lam.length(); ++i) {
        for (int c = 0; c < lam[i]; ++c) {
            num *= m + c - i;
            den *= (lam[i] - c - 1) + (conj[c] - i - 1) + 1;
        }
    }
    return num / den;
}

Integer dim_specht(const Partition& lam) {
    auto conj = lam.conjugate();
    Integer den = 1;
    for (int i = 0; i < lam.length(); ++i)
        for (int c = 0; c < lam[i]; ++c) den *= (lam[i] - c - 1) + (conj[c] - i - 1) + 1;
    return factorial(lam.size()) / den;
}

Integer dim_specht(const NPartition& lam) {
    Integer out = 1;
    for (const auto& c : lam.components()) out *= dim_specht(c);
    return out;
}

std::vector<NPartition> n_partitions(const std::vector<int>& profile, int max_parts) {
    std::vector<std::vector<Partition>> choices;
    for (int m : profile) choices.push_back(partitions(m, max_parts));
    std::vector<NPartition> out;
    std::vector<std::size_t> idx(profile.size(), 0);
    if (profile.empty()) return {NPartition()};
    while (true) {
        std::vector<Partition> comps;
        for (std::size_t j = 0; j < profile.size(); ++j) comps.push_back(choices[j][idx[j]]);
        out.emplace_back(std::move(comps));
        std::size_t j = profile.size();
        while (j > 0) {
            --j;
            if (++idx[j] < choices[j].size()) break;
            idx[j] = 0;
            if (j == 0) return out;
        }
    }
}

std::vector<NPartition> n_partitions(const Shape& shape, int max_parts) {
    return n_partitions(shape.profile(), max_parts);
}

BoxCoordinates box_coordinates(const Partition& lam) {
    BoxCoordinates out;
    for (int i = 0; i < lam.length(); ++i)
        for (int c = 0; c < lam[i]; ++c) {
            out.row.push_back(i);
            out.col.push_back(c);
        }
    return out;
}

}  // namespace secantkit
