#include "sykclt/clifford.hpp"

#include <bit>
#include <sstream>

#include "sykclt/errors.hpp"

namespace sykclt {

namespace {

constexpr std::uint64_t bits_above(int position) {
    return position >= 63 ? 0 : ~((std::uint64_t{1} << (position + 1)) - 1);
}

constexpr std::uint64_t low_mask(int count) {
    return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

void require_same_n(const IndexSet& a, const IndexSet& b) {
    if (a.n() != b.n()) {
        throw DimensionError("index sets over different n (" + std::to_string(a.n()) + " vs " +
                             std::to_string(b.n()) + ")");
    }
}

} // namespace

// -- IndexSet ------------------------------------------------------------

IndexSet::IndexSet(std::uint64_t bits, int n) : bits_(bits), n_(n) {
    if (n < 0 || n > kMaxSymbolicN) throw ArgumentError("n must lie in [0, 64], got " + std::to_string(n));
    if ((bits & ~low_mask(n)) != 0) throw ArgumentError("index set has elements outside [1, n]");
}

IndexSet::IndexSet(std::initializer_list<int> elements, int n)
    : IndexSet(from_elements(std::span<const int>(elements.begin(), elements.size()), n)) {}

IndexSet IndexSet::from_elements(std::span<const int> elements, int n) {
    std::uint64_t bits = 0;
    for (int j : elements) {
        if (j < 1 || j > n) throw ArgumentError("element " + std::to_string(j) + " outside [1, n]");
        bits |= std::uint64_t{1} << (j - 1);
    }
    return IndexSet(bits, n);
}

int IndexSet::size() const { return std::popcount(bits_); }

bool IndexSet::contains(int j) const {
    return j >= 1 && j <= n_ && ((bits_ >> (j - 1)) & 1u) != 0;
}

std::vector<int> IndexSet::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
}

std::string IndexSet::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int j : elements()) {
        if (!first) os << ',';
        os << j;
        first = false;
    }
    os << '}';
    return os.str();
}

IndexSet IndexSet::symmetric_difference(const IndexSet& other) const {
    require_same_n(*this, other);
    return IndexSet(bits_ ^ other.bits_, n_);
}

IndexSet IndexSet::intersection(const IndexSet& other) const {
    require_same_n(*this, other);
    return IndexSet(bits_ & other.bits_, n_);
}

bool lex_less(const IndexSet& a, const IndexSet& b) {
    const std::uint64_t diff = a.bits() ^ b.bits();
    if (diff == 0) return false;
    const int p = std::countr_zero(diff);
    // Both lists agree below p; the one holding p is a prefix of the other
    // only if the other has nothing above p.
    if ((a.bits() >> p) & 1u) return (b.bits() & bits_above(p)) != 0;
    return (a.bits() & bits_above(p)) == 0;
}

// -- Phase ---------------------------------------------------------------

std::complex<double> Phase::value() const {
    switch (exponent_) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

std::string Phase::to_string() const {
    static constexpr const char* names[] = {"+1", "+i", "-1", "-i"};
    return names[exponent_];
}

// -- word algebra --------------------------------------------------------

int merge_swap_count(const IndexSet& lhs, const IndexSet& rhs) {
    int swaps = 0;
    for (std::uint64_t b = rhs.bits(); b != 0; b &= b - 1) {
        swaps += std::popcount(lhs.bits() & bits_above(std::countr_zero(b)));
    }
    return swaps;
}

MajoranaWord word_product(const MajoranaWord& lhs, const MajoranaWord& rhs) {
    require_same_n(lhs.support, rhs.support);
    const int swaps = merge_swap_count(lhs.support, rhs.support);
    Phase phase = lhs.phase * rhs.phase;
    if (swaps & 1) phase *= Phase::minus_one();
    return MajoranaWord(lhs.support.symmetric_difference(rhs.support), phase);
}

std::complex<double> normalized_trace(const MajoranaWord& w) {
    return w.support.empty() ? w.phase.value() : std::complex<double>{0.0, 0.0};
}

MajoranaWord fold_product(std::span<const IndexSet> words) {
    if (words.empty()) return MajoranaWord(IndexSet(0, 0));
    MajoranaWord acc(words.front());
    for (std::size_t i = 1; i < words.size(); ++i) acc = word_product(acc, MajoranaWord(words[i]));
    return acc;
}

std::complex<double> product_trace(std::span<const IndexSet> words) {
    return normalized_trace(fold_product(words));
}

std::vector<IndexSet> arrange_by_partition(const PairPartition& pi, std::span<const IndexSet> assignment) {
    if (assignment.size() != pi.blocks().size()) {
        throw ArgumentError("assignment must hold one index set per block");
    }
    std::vector<IndexSet> seq;
    seq.reserve(static_cast<std::size_t>(pi.order()));
    for (int label : pi.labels()) seq.push_back(assignment[static_cast<std::size_t>(label)]);
    return seq;
}

int pi_sign_identity(const PairPartition& pi, std::span<const IndexSet> assignment, int q) {
    if (q % 2 != 0) throw ArgumentError("the crossing sign identity is stated for even q only");
    if (assignment.size() != pi.blocks().size()) {
        throw ArgumentError("assignment must hold one index set per block");
    }
    for (const auto& r : assignment) {
        if (r.size() != q) throw ArgumentError("every assigned index set must have cardinality q");
        require_same_n(r, assignment.front());
    }
    int exponent = 0;
    for (auto [r, s] : pi.crossings()) {
        exponent += assignment[static_cast<std::size_t>(r)].intersection(assignment[static_cast<std::size_t>(s)]).size();
    }
    return (exponent & 1) ? -1 : 1;
}

// -- Jordan-Wigner -------------------------------------------------------

PauliForm PauliForm::operator*(const PauliForm& rhs) const {
    PauliForm out;
    out.qubits = qubits;
    out.x = x ^ rhs.x;
    out.z = z ^ rhs.z;
    out.phase = phase * rhs.phase;
    // Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1}
    if (std::popcount(z & rhs.x) & 1) out.phase *= Phase::minus_one();
    return out;
}

std::complex<double> PauliForm::column_entry(std::uint64_t basis) const {
    const std::complex<double> v = phase.value();
    return (std::popcount(z & basis) & 1) ? -v : v;
}

namespace {

PauliForm single_majorana(int j, int n) {
    const int m = n / 2;
    const int k = (j + 1) / 2;
    const int position = m - k;
    PauliForm p;
    p.qubits = m;
    p.x = std::uint64_t{1} << position;
    p.z = low_mask(m) & bits_above(position);
    if (j % 2 == 0) {
        // Y = i X Z
        p.z |= p.x;
        p.phase = Phase::i();
    }
    return p;
}

void require_even_n(int n) {
    if (n <= 0 || n % 2 != 0) throw ArgumentError("a Majorana realization needs positive even n, got " + std::to_string(n));
}

} // namespace

PauliForm jordan_wigner(const IndexSet& word) {
    require_even_n(word.n());
    PauliForm acc;
    acc.qubits = word.n() / 2;
    for (int j : word.elements()) acc = acc * single_majorana(j, word.n());
    return acc;
}

DenseOperator dense_majorana(int j, int n, int dense_cap) {
    require_even_n(n);
    if (n > dense_cap) {
        throw ResourceError("dense realization requested for n = " + std::to_string(n) + " above cap " +
                            std::to_string(dense_cap));
    }
    if (j < 1 || j > n) throw ArgumentError("Majorana index out of range");

    using C = std::complex<double>;
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd px, py, pz;
    px << C(0, 0), C(1, 0), C(1, 0), C(0, 0);
    py << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
    pz << C(1, 0), C(0, 0), C(0, 0), C(-1, 0);

    const int k = (j + 1) / 2;
    DenseOperator out = DenseOperator::Identity(1, 1);
    for (int qubit = 1; qubit <= n / 2; ++qubit) {
        const Eigen::Matrix2cd& f = qubit < k ? pz : qubit > k ? id : (j % 2 ? px : py);
        DenseOperator next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = out(r, c) * f;
        }
        out = std::move(next);
    }
    return out;
}

DenseOperator dense_word(const IndexSet& word, int dense_cap) {
    require_even_n(word.n());
    const Eigen::Index dim = Eigen::Index{1} << (word.n() / 2);
    if (word.n() > dense_cap) {
        throw ResourceError("dense realization requested for n = " + std::to_string(word.n()) + " above cap " +
                            std::to_string(dense_cap));
    }
    DenseOperator out = DenseOperator::Identity(dim, dim);
    for (int j : word.elements()) out = out * dense_majorana(j, word.n(), dense_cap);
    return out;
}

DenseOperator dense_from_pauli(const PauliForm& p) {
    const std::uint64_t dim = std::uint64_t{1} << p.qubits;
    DenseOperator out = DenseOperator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        out(static_cast<Eigen::Index>(b ^ p.x), static_cast<Eigen::Index>(b)) = p.column_entry(b);
    }
    return out;
}

} // namespace sykclt
