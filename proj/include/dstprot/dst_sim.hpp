#ifndef DSTPROT_DST_SIM_HPP
#define DSTPROT_DST_SIM_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dstprot {

struct BitString {
    std::optional<std::string> label;
    std::vector<std::uint8_t> bits;  // each entry 0 or 1

    static BitString parse(std::string_view bits, std::optional<std::string> label = std::nullopt);
};

// Binary tree stored as a flat node array. Node 0 is the root and every
// child has a larger index than its parent.
class DstTree {
public:
    static constexpr std::int32_t kNone = -1;

    struct Node {
        std::optional<std::string> label;
        std::int32_t left = kNone;
        std::int32_t right = kNone;

        bool is_leaf() const { return left == kNone && right == kNone; }
    };

    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    std::span<const Node> nodes() const { return nodes_; }

    // Appends a node below `parent` (kNone for the root). side: 0 left, 1 right.
    std::int32_t attach(std::int32_t parent, int side, std::optional<std::string> label = std::nullopt);

    // Parenthesized rendering, e.g. "A(B(C,E(F,)),D(,G(I,H)))". Leaves print
    // as their label alone; unlabeled nodes print as '*'.
    std::string render() const;

private:
    std::vector<Node> nodes_;
};

// A string ran out of routing bits before it reached a free slot.
class BitsExhausted : public std::runtime_error {
public:
    BitsExhausted(std::size_t index, std::optional<std::string> label);

    std::size_t index() const { return index_; }
    const std::optional<std::string>& label() const { return label_; }

private:
    std::size_t index_;
    std::optional<std::string> label_;
};

// Problem in a bit-string file; line() is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Deterministic DST: the first string takes the root, each later string
// walks down consuming one bit per level (0 left, 1 right) until it finds
// an empty slot.
DstTree build_from_strings(std::span<const BitString> inputs);

enum class RandomMode { BIT_STREAM, SPLIT };

// Random DST of n items with fair coin flips.
//
// BIT_STREAM inserts n items whose routing bits are drawn lazily. SPLIT
// generates only the shape: one item at the root, the rest split
// Binomial(n-1, 1/2) between the subtrees, recursively. Both modes give the
// same shape distribution; SPLIT needs no per-item state.
DstTree build_random(int n, std::uint64_t seed, RandomMode mode = RandomMode::SPLIT);

// Same, drawing from a caller-owned engine.
DstTree build_random(int n, std::mt19937_64& engine, RandomMode mode);

// Minimum distance from each node to a leaf in its subtree (leaves: 0).
std::vector<int> leaf_distances(const DstTree& tree);

// Nodes whose leaf distance is at least k. k = 0 counts every node; k = 1
// counts internal nodes.
std::int64_t count_k_protected(const DstTree& tree, int k);
std::vector<std::int32_t> k_protected_nodes(const DstTree& tree, int k);
std::int64_t count_leaves(const DstTree& tree);

// Reads `bits` or `label:bits` records, one per line. Blank lines and lines
// starting with '#' are skipped.
std::vector<BitString> read_bit_strings(std::istream& in);
std::vector<BitString> read_bit_strings_file(const std::string& path);

struct Statistic {
    enum class Kind { K_PROTECTED, LEAVES };
    Kind kind = Kind::K_PROTECTED;
    int k = 2;

    static Statistic protected_nodes(int k) { return {Kind::K_PROTECTED, k}; }
    static Statistic leaves() { return {Kind::LEAVES, 0}; }
    std::int64_t evaluate(const DstTree& tree) const;
    std::string name() const;
};

struct SummaryStats {
    std::int64_t trials = 0;
    double mean = 0;
    double variance = 0;  // unbiased sample variance, 0 for a single trial
    double std_error = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::uint64_t seed = 0;
};

// Engine for trial `trial` of a run seeded with `seed`. Depends only on
// the pair, so trials can be evaluated in any order or on any thread.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

struct MonteCarloOptions {
    RandomMode mode = RandomMode::SPLIT;
    unsigned threads = 1;
};

// Sample statistics of `statistic` over `trials` independent random trees.
// Per-trial values are integers and are aggregated exactly, so the result
// is identical for every thread count.
SummaryStats monte_carlo(int n, std::int64_t trials, std::uint64_t seed, Statistic statistic,
                         MonteCarloOptions options = {});

// The raw per-trial values behind monte_carlo, in trial order.
std::vector<std::int64_t> monte_carlo_samples(int n, std::int64_t trials, std::uint64_t seed, Statistic statistic,
                                              MonteCarloOptions options = {});

SummaryStats summarize(std::span<const std::int64_t> samples, std::uint64_t seed);

}  // namespace dstprot

#endif  // DSTPROT_DST_SIM_HPP
