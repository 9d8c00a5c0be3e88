#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace secantkit {

using Integer = mpz_class;
using Rational = mpq_class;

class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return i < length() ? parts_[i] : 0; }
    bool empty() const { return parts_.empty(); }

    Partition conjugate() const;
    std::string to_string() const;
    static Partition parse(const std::string& text);

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
    int size_ = 0;
};

class NPartition {
public:
    NPartition() = default;
    explicit NPartition(std::vector<Partition> components);

    const std::vector<Partition>& components() const { return components_; }
    const Partition& operator[](std::size_t j) const { return components_[j]; }
    std::size_t n() const { return components_.size(); }
    std::vector<int> profile() const;
    int max_length() const;

    // "5,3|2,1,1"
    std::string to_string() const;
    static NPartition parse(const std::string& text);

    auto operator<=>(const NPartition&) const = default;

private:
    std::vector<Partition> components_;
};

// Multiplicity of each irreducible; zero entries are never stored.
using DecompositionTable = std::map<NPartition, std::int64_t>;

struct Shape {
    std::vector<int> delta;
    int r = 0;
    int k = 2;

    Shape() = default;
    Shape(std::vector<int> delta_, int r_, int k_ = 2);

    int n() const { return static_cast<int>(delta.size()); }
    int label_count(int j) const { return r * delta[j]; }
    std::vector<int> profile() const;
    std::string to_string() const;
};

std::vector<int> parse_int_list(const std::string& text);
std::string join_ints(const std::vector<int>& values, const std::string& sep = ",");

// Partitions of m with at most max_parts parts, reverse-lexicographic.
std::vector<Partition> partitions(int m, int max_parts);
std::int64_t partition_count(int m);

Integer factorial(int m);
Integer binomial(int n, int k);

Integer dim_schur(const Partition& lam, int m);
Integer dim_specht(const Partition& lam);
Integer dim_specht(const NPartition& lam);

std::vector<NPartition> n_partitions(const std::vector<int>& profile, int max_parts);
std::vector<NPartition> n_partitions(const Shape& shape, int max_parts);

// Row index (0-based) and column index of each box of the canonical tableau,
// boxes numbered left to right, top to bottom.
struct BoxCoordinates {
    std::vector<int> row;
    std::vector<int> col;
};
BoxCoordinates box_coordinates(const Partition& lam);

}  // namespace secantkit
