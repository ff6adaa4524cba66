#include "dstprot/dst_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <thread>
#include <tuple>

#include "dstprot/real.hpp"

namespace dstprot {

namespace {

// Hands out single fair bits from 64-bit engine draws.
class BitSource {
public:
    explicit BitSource(std::mt19937_64& engine) : engine_(engine) {}

    int next() {
        if (remaining_ == 0) {
            word_ = engine_();
            remaining_ = 64;
        }
        const int bit = static_cast<int>(word_ & 1U);
        word_ >>= 1;
        --remaining_;
        return bit;
    }

private:
    std::mt19937_64& engine_;
    std::uint64_t word_ = 0;
    int remaining_ = 0;
};

// Binomial(trials, 1/2) as the popcount of `trials` fair bits.
int fair_binomial(int trials, std::mt19937_64& engine) {
    int count = 0;
    for (; trials >= 64; trials -= 64) count += std::popcount(engine());
    if (trials > 0) count += std::popcount(engine() & ((std::uint64_t{1} << trials) - 1));
    return count;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

void render_node(const DstTree& tree, std::int32_t index, std::string& out) {
    const auto& node = tree.node(static_cast<std::size_t>(index));
    out += node.label.value_or("*");
    if (node.is_leaf()) return;
    out += '(';
    if (node.left != DstTree::kNone) render_node(tree, node.left, out);
    out += ',';
    if (node.right != DstTree::kNone) render_node(tree, node.right, out);
    out += ')';
}

}  // namespace

BitString BitString::parse(std::string_view bits, std::optional<std::string> label) {
    BitString out{std::move(label), {}};
    out.bits.reserve(bits.size());
    for (const char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit strings may only contain '0' and '1'");
        out.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

std::int32_t DstTree::attach(std::int32_t parent, int side, std::optional<std::string> label) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    if (parent == kNone) {
        if (!nodes_.empty()) throw std::logic_error("DstTree: root already present");
    } else {
        auto& slot = side == 0 ? nodes_.at(parent).left : nodes_.at(parent).right;
        if (slot != kNone) throw std::logic_error("DstTree: child slot already occupied");
        slot = index;
    }
    nodes_.push_back(Node{std::move(label), kNone, kNone});
    return index;
}

std::string DstTree::render() const {
    std::string out;
    if (!empty()) render_node(*this, 0, out);
    return out;
}

BitsExhausted::BitsExhausted(std::size_t index, std::optional<std::string> label)
    : std::runtime_error("bits exhausted for record " + std::to_string(index + 1) +
                         (label ? " (" + *label + ")" : std::string())),
      index_(index),
      label_(std::move(label)) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

DstTree build_from_strings(std::span<const BitString> inputs) {
    if (inputs.empty()) throw std::invalid_argument("build_from_strings: no input strings");
    DstTree tree;
    tree.attach(DstTree::kNone, 0, inputs.front().label);
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        const auto& item = inputs[i];
        std::int32_t at = 0;
        for (std::size_t depth = 0;; ++depth) {
            if (depth >= item.bits.size()) throw BitsExhausted(i, item.label);
            const int side = item.bits[depth];
            const auto& node = tree.node(static_cast<std::size_t>(at));
            const std::int32_t child = side == 0 ? node.left : node.right;
            if (child == DstTree::kNone) {
                tree.attach(at, side, item.label);
                break;
            }
            at = child;
        }
    }
    return tree;
}

DstTree build_random(int n, std::mt19937_64& engine, RandomMode mode) {
    if (n < 0) throw std::invalid_argument("build_random: n must be non-negative");
    DstTree tree;
    if (n == 0) return tree;

    if (mode == RandomMode::BIT_STREAM) {
        BitSource bits(engine);
        tree.attach(DstTree::kNone, 0);
        for (int i = 1; i < n; ++i) {
            std::int32_t at = 0;
            for (;;) {
                const int side = bits.next();
                const auto& node = tree.node(static_cast<std::size_t>(at));
                const std::int32_t child = side == 0 ? node.left : node.right;
                if (child == DstTree::kNone) {
                    tree.attach(at, side);
                    break;
                }
                at = child;
            }
        }
        return tree;
    }

    // (parent, side, subtree size); left subtrees are generated first.
    std::vector<std::tuple<std::int32_t, int, int>> pending{{DstTree::kNone, 0, n}};
    while (!pending.empty()) {
        const auto [parent, side, size] = pending.back();
        pending.pop_back();
        const std::int32_t node = tree.attach(parent, side);
        const int left = fair_binomial(size - 1, engine);
        const int right = size - 1 - left;
        if (right > 0) pending.emplace_back(node, 1, right);
        if (left > 0) pending.emplace_back(node, 0, left);
    }
    return tree;
}

DstTree build_random(int n, std::uint64_t seed, RandomMode mode) {
    std::mt19937_64 engine = trial_engine(seed, 0);
    return build_random(n, engine, mode);
}

std::vector<int> leaf_distances(const DstTree& tree) {
    const auto nodes = tree.nodes();
    std::vector<int> dist(nodes.size(), 0);
    for (std::size_t i = nodes.size(); i-- > 0;) {
        const auto& node = nodes[i];
        if (node.is_leaf()) continue;
        int best = -1;
        for (const std::int32_t child : {node.left, node.right}) {
            if (child == DstTree::kNone) continue;
            const int d = dist[static_cast<std::size_t>(child)];
            best = best < 0 ? d : std::min(best, d);
        }
        dist[i] = best + 1;
    }
    return dist;
}

std::vector<std::int32_t> k_protected_nodes(const DstTree& tree, int k) {
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    const auto dist = leaf_distances(tree);
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] >= k) out.push_back(static_cast<std::int32_t>(i));
    return out;
}

std::int64_t count_k_protected(const DstTree& tree, int k) {
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    const auto dist = leaf_distances(tree);
    return std::count_if(dist.begin(), dist.end(), [k](int d) { return d >= k; });
}

std::int64_t count_leaves(const DstTree& tree) {
    const auto nodes = tree.nodes();
    return std::count_if(nodes.begin(), nodes.end(), [](const DstTree::Node& n) { return n.is_leaf(); });
}

std::vector<BitString> read_bit_strings(std::istream& in) {
    std::vector<BitString> out;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const std::string text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        std::optional<std::string> label;
        std::string bits = text;
        if (const auto colon = text.find(':'); colon != std::string::npos) {
            label = trim(std::string_view(text).substr(0, colon));
            bits = trim(std::string_view(text).substr(colon + 1));
            if (label->empty()) throw ParseError(line, "empty label before ':'");
        }
        if (bits.empty()) throw ParseError(line, "missing bits");
        if (bits.find_first_not_of("01") != std::string::npos)
            throw ParseError(line, "bits must be a non-empty string of 0 and 1, got '" + bits + "'");
        out.push_back(BitString::parse(bits, std::move(label)));
    }
    return out;
}

std::vector<BitString> read_bit_strings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_bit_strings(in);
}

std::int64_t Statistic::evaluate(const DstTree& tree) const {
    return kind == Kind::LEAVES ? count_leaves(tree) : count_k_protected(tree, k);
}

std::string Statistic::name() const {
    return kind == Kind::LEAVES ? "leaves" : "protected" + std::to_string(k);
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

std::vector<std::int64_t> monte_carlo_samples(int n, std::int64_t trials, std::uint64_t seed, Statistic statistic,
                                              MonteCarloOptions options) {
    if (n < 0) throw std::invalid_argument("monte_carlo: n must be non-negative");
    if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    if (statistic.kind == Statistic::Kind::K_PROTECTED && statistic.k < 0)
        throw std::invalid_argument("monte_carlo: k must be non-negative");

    std::vector<std::int64_t> samples(static_cast<std::size_t>(trials));
    auto run = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            auto engine = trial_engine(seed, static_cast<std::uint64_t>(t));
            samples[static_cast<std::size_t>(t)] = statistic.evaluate(build_random(n, engine, options.mode));
        }
    };

    const auto workers = static_cast<std::int64_t>(std::clamp<std::int64_t>(options.threads, 1, trials));
    if (workers == 1) {
        run(0, trials);
        return samples;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w)
        pool.emplace_back(run, trials * w / workers, trials * (w + 1) / workers);
    pool.clear();  // joins
    return samples;
}

SummaryStats summarize(std::span<const std::int64_t> samples, std::uint64_t seed) {
    if (samples.empty()) throw std::invalid_argument("summarize: no samples");
    // Exact integer moments, so the result does not depend on summation order.
    Integer sum = 0;
    Integer sum_sq = 0;
    for (const std::int64_t x : samples) {
        const Integer v(static_cast<long>(x));
        sum += v;
        sum_sq += v * v;
    }
    const auto trials = static_cast<std::int64_t>(samples.size());
    const Integer count(static_cast<long>(trials));

    SummaryStats out;
    out.trials = trials;
    out.seed = seed;
    Rational mean(sum, count);
    mean.canonicalize();
    out.mean = mean.get_d();
    if (trials > 1) {
        Rational var(count * sum_sq - sum * sum, count * (count - 1));
        var.canonicalize();
        out.variance = var.get_d();
    }
    out.std_error = std::sqrt(out.variance / static_cast<double>(trials));
    out.ci_low = out.mean - 1.96 * out.std_error;
    out.ci_high = out.mean + 1.96 * out.std_error;
    return out;
}

SummaryStats monte_carlo(int n, std::int64_t trials, std::uint64_t seed, Statistic statistic,
                         MonteCarloOptions options) {
    const auto samples = monte_carlo_samples(n, trials, seed, statistic, options);
    return summarize(samples, seed);
}

}  // namespace dstprot
