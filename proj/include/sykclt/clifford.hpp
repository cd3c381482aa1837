#pragma once

// Majorana operator words Psi_A = psi_{i_1} ... psi_{i_m} (i_1 < ... < i_m)
// held symbolically as a support bitmask plus a fourth-root-of-unity phase.
// The dense Jordan-Wigner realization is only used to cross-check the
// symbolic algebra and to assemble Hamiltonians.

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sykclt/pair_partition.hpp"

namespace sykclt {

inline constexpr int kMaxSymbolicN = 64;
inline constexpr int kDefaultDenseCap = 16;

/// A subset of {1..n} stored as a 64-bit mask; position j maps to bit j-1.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::uint64_t bits, int n);
    IndexSet(std::initializer_list<int> elements, int n);
    static IndexSet from_elements(std::span<const int> elements, int n);

    std::uint64_t bits() const { return bits_; }
    int n() const { return n_; }
    int size() const;
    bool empty() const { return bits_ == 0; }
    bool contains(int j) const;
    std::vector<int> elements() const;
    std::string to_string() const;

    IndexSet symmetric_difference(const IndexSet& other) const;
    IndexSet intersection(const IndexSet& other) const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::uint64_t bits_ = 0;
    int n_ = 0;
};

/// Lexicographic order of the sorted element lists.
bool lex_less(const IndexSet& a, const IndexSet& b);

/// i^exponent, exponent taken mod 4.
class Phase {
public:
    constexpr Phase() = default;
    static constexpr Phase i_power(int exponent) { return Phase(exponent); }
    static constexpr Phase one() { return Phase(0); }
    static constexpr Phase i() { return Phase(1); }
    static constexpr Phase minus_one() { return Phase(2); }
    static constexpr Phase minus_i() { return Phase(3); }

    constexpr int exponent() const { return exponent_; }
    constexpr bool is_real() const { return (exponent_ & 1) == 0; }
    /// +1 or -1; only meaningful when is_real().
    constexpr int sign() const { return exponent_ == 0 ? 1 : -1; }
    std::complex<double> value() const;
    std::string to_string() const;

    constexpr Phase operator*(Phase other) const { return Phase(exponent_ + other.exponent_); }
    constexpr Phase& operator*=(Phase other) { return *this = *this * other; }
    constexpr Phase conj() const { return Phase(-exponent_); }
    friend constexpr bool operator==(Phase, Phase) = default;

private:
    constexpr explicit Phase(int exponent) : exponent_(static_cast<std::uint8_t>(((exponent % 4) + 4) % 4)) {}
    std::uint8_t exponent_ = 0;
};

/// phase * Psi_support with the support in canonical (sorted, reduced) form.
struct MajoranaWord {
    IndexSet support;
    Phase phase;

    explicit MajoranaWord(IndexSet s, Phase p = Phase::one()) : support(s), phase(p) {}
    friend bool operator==(const MajoranaWord&, const MajoranaWord&) = default;
};

/// Number of transpositions needed to bring Psi_lhs Psi_rhs into sorted order
/// before cancelling repeated generators.
int merge_swap_count(const IndexSet& lhs, const IndexSet& rhs);

MajoranaWord word_product(const MajoranaWord& lhs, const MajoranaWord& rhs);

/// L^{-1} Tr w: the phase when the support is empty, zero otherwise.
std::complex<double> normalized_trace(const MajoranaWord& w);

/// Reduces Psi_{A_1} ... Psi_{A_k} to a single canonical word.
MajoranaWord fold_product(std::span<const IndexSet> words);

/// L^{-1} Tr Psi_{A_1} ... Psi_{A_k}; always one of {0, +-1, +-i}.
std::complex<double> product_trace(std::span<const IndexSet> words);

/// (-1)^{sum over crossings {r,s} of |R_r cap R_s|}, for even q. assignment[r]
/// is the index set placed on block r of pi.
int pi_sign_identity(const PairPartition& pi, std::span<const IndexSet> assignment, int q);

/// The word sequence R_{pi(1)}, ..., R_{pi(k)}.
std::vector<IndexSet> arrange_by_partition(const PairPartition& pi, std::span<const IndexSet> assignment);

// -- Jordan-Wigner realization -------------------------------------------

using DenseOperator = Eigen::MatrixXcd;

/// phase * X^x Z^z on n/2 qubits. Qubit j (1-based) is the j-th Kronecker
/// factor and lives on bit (n/2 - j) of a basis index.
struct PauliForm {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    Phase phase;
    int qubits = 0;

    PauliForm operator*(const PauliForm& rhs) const;
    /// Matrix element <b ^ x| P |b> for basis index b.
    std::complex<double> column_entry(std::uint64_t basis) const;
};

/// The Pauli form of Psi_A, psi_{2k-1} = Z..Z X I..I and psi_{2k} = Z..Z Y I..I.
PauliForm jordan_wigner(const IndexSet& word);

/// Dense L x L matrix of psi_j, L = 2^{n/2}, built from explicit Kronecker
/// products. Throws ResourceError when n exceeds the cap.
DenseOperator dense_majorana(int j, int n, int dense_cap = kDefaultDenseCap);

/// Dense matrix of Psi_A as an ordered product of dense_majorana factors.
DenseOperator dense_word(const IndexSet& word, int dense_cap = kDefaultDenseCap);

DenseOperator dense_from_pauli(const PauliForm& p);

} // namespace sykclt
