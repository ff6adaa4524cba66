#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dstprot/asymptotics.hpp"
#include "dstprot/exact_sequence.hpp"
#include "dstprot/qseries.hpp"

namespace dstprot::cli {

namespace {

// Lowest terms; integers print without a denominator.
std::string to_string(const Rational& q) { return q.get_str(); }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kFloatDigits, v);
    return buf;
}

std::string ratio_string(const Rational& value, int n) {
    if (n == 0) return "";
    const Real ratio = Real(value, bits_for_digits(kRatioDigits + 20)) / Real(static_cast<long>(n), 64);
    return ratio.to_fixed(kRatioDigits);
}

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Fields base_metadata() { return {{"tool", "dstprot"}, {"version", kVersion}}; }

Rational exact_l(int n) {
    // The binomial transform route is the cheapest exact route for one large n.
    return l_from_m(m_sequence_recursion(n), n);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

void write_csv(const OutputRecord& record, std::ostream& out) {
    out << "# command=" << record.command << '\n';
    for (const auto& [k, v] : record.parameters) out << "# param " << k << '=' << v << '\n';
    for (const auto& [k, v] : record.metadata) out << "# meta " << k << '=' << v << '\n';
    std::vector<std::string> header;
    for (const auto& c : record.columns) header.push_back(csv_cell(c));
    out << join(header, ",") << '\n';
    for (const auto& row : record.rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(csv_cell(c));
        out << join(cells, ",") << '\n';
    }
}

void write_json(const OutputRecord& record, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["command"] = record.command;
    doc["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : record.parameters) doc["parameters"][k] = v;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : record.metadata) doc["metadata"][k] = v;
    doc["results"] = nlohmann::ordered_json::array();
    for (const auto& row : record.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < record.columns.size(); ++i) obj[record.columns[i]] = row.at(i);
        doc["results"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

void write(const OutputRecord& record, Format format, std::ostream& out) {
    if (format == Format::JSON)
        write_json(record, out);
    else
        write_csv(record, out);
}

Statistic parse_statistic(const std::string& text) {
    if (text == "leaves") return Statistic::leaves();
    const std::string prefix = "protected";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size()) {
        const std::string digits = text.substr(prefix.size());
        if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 6)
            return Statistic::protected_nodes(std::stoi(digits));
    }
    throw UsageError("unknown statistic '" + text + "' (expected leaves or protected<k>)");
}

CommandResult cmd_exact(int n, ExactMethod method, int n_cap) {
    if (n < 0) throw UsageError("--n must be non-negative");
    if (n > n_cap) throw UsageError("--n " + std::to_string(n) + " exceeds the cap " + std::to_string(n_cap));

    const char* method_name = method == ExactMethod::RECURSION     ? "recursion"
                              : method == ExactMethod::CLOSED_FORM ? "closed-form"
                                                                   : "both";
    CommandResult result;
    auto& rec = result.record;
    rec.command = "exact";
    rec.parameters = {{"n", std::to_string(n)}, {"method", method_name}};
    rec.metadata = base_metadata();
    rec.metadata.emplace_back("ratio_digits", std::to_string(kRatioDigits));
    rec.columns = {"n", "l_n", "l_n_over_n"};
    if (method == ExactMethod::BOTH) rec.columns.emplace_back("agree");

    SequenceTable primary = method == ExactMethod::CLOSED_FORM ? l_closed_form_table(n) : l_sequence_recursion(n);
    SequenceTable other;
    if (method == ExactMethod::BOTH) other = l_closed_form_table(n);

    for (int i = 0; i <= n; ++i) {
        const Rational& v = primary.values[i];
        std::vector<std::string> row{std::to_string(i), to_string(v), ratio_string(v, i)};
        if (method == ExactMethod::BOTH) {
            const bool agree = other.values[i] == v;
            if (!agree) result.exit_code = kExitInconsistent;
            row.emplace_back(agree ? "true" : "false");
        }
        rec.rows.push_back(std::move(row));
    }
    return result;
}

CommandResult cmd_constant(int digits) {
    if (digits < 1 || digits > 1000) throw UsageError("--digits must be in [1, 1000]");
    PrecisionConfig cfg;
    cfg.digits = digits;
    const AsymptoticConstant c = protected_constant(cfg);

    CommandResult result;
    auto& rec = result.record;
    rec.command = "constant";
    rec.parameters = {{"digits", std::to_string(digits)}};
    rec.metadata = base_metadata();
    rec.metadata.emplace_back("precision", std::to_string(digits));
    rec.metadata.emplace_back("guard_digits", std::to_string(cfg.guard_digits));
    rec.columns = {"digits", "value", "truncation_index", "tail_bound"};
    rec.rows.push_back({std::to_string(digits), c.value.str(), std::to_string(c.truncation_index),
                        c.tail_bound.to_scientific(3)});
    return result;
}

CommandResult cmd_simulate(const SimulateOptions& options) {
    if (options.n < 0) throw UsageError("--n must be non-negative");
    if (options.trials < 1) throw UsageError("--trials must be >= 1");
    const Statistic statistic = parse_statistic(options.statistic);
    const SummaryStats stats = monte_carlo(options.n, options.trials, options.seed, statistic,
                                           MonteCarloOptions{options.mode, options.threads});

    std::string reference;
    std::string z_score;
    if (statistic.kind == Statistic::Kind::K_PROTECTED && statistic.k == 2 && options.n <= options.n_cap) {
        const Rational l_n = exact_l(options.n);
        const double ref = l_n.get_d();
        reference = Real(l_n, 128).to_fixed(kRatioDigits);
        double z;
        if (stats.std_error > 0)
            z = (stats.mean - ref) / stats.std_error;
        else
            z = stats.mean == ref ? 0.0 : std::numeric_limits<double>::infinity();
        z_score = format_double(z);
    }

    CommandResult result;
    auto& rec = result.record;
    rec.command = "simulate";
    rec.parameters = {{"n", std::to_string(options.n)},
                      {"trials", std::to_string(options.trials)},
                      {"seed", std::to_string(options.seed)},
                      {"statistic", statistic.name()},
                      {"mode", options.mode == RandomMode::SPLIT ? "split" : "bitstream"}};
    rec.metadata = base_metadata();
    rec.metadata.emplace_back("seed", std::to_string(options.seed));
    rec.metadata.emplace_back("float_digits", std::to_string(kFloatDigits));
    rec.columns = {"n",       "statistic", "trials", "mean",       "variance",  "std_error",
                   "ci_low",  "ci_high",   "mean_over_n", "reference", "z_score"};
    const double per_node = options.n > 0 ? stats.mean / options.n : 0.0;
    rec.rows.push_back({std::to_string(options.n), statistic.name(), std::to_string(stats.trials),
                        format_double(stats.mean), format_double(stats.variance), format_double(stats.std_error),
                        format_double(stats.ci_low), format_double(stats.ci_high),
                        options.n > 0 ? format_double(per_node) : "", reference, z_score});
    return result;
}

CommandResult cmd_compare(const CompareOptions& options) {
    if (options.ns.empty()) throw UsageError("--n-list must name at least one size");
    for (const int n : options.ns) {
        if (n < 1) throw UsageError("--n-list entries must be >= 1");
        if (n > options.n_cap) throw UsageError("--n-list entry " + std::to_string(n) + " exceeds the cap");
    }
    if (options.trials < 1) throw UsageError("--trials must be >= 1");
    if (options.digits < 1 || options.digits > 1000) throw UsageError("--digits must be in [1, 1000]");

    PrecisionConfig cfg;
    cfg.digits = options.digits;
    const auto rows = residual_table(options.ns, cfg);
    const int max_n = *std::max_element(options.ns.begin(), options.ns.end());
    const SequenceTable m = m_sequence_recursion(max_n);

    CommandResult result;
    auto& rec = result.record;
    rec.command = "compare";
    std::vector<std::string> ns;
    for (const int n : options.ns) ns.push_back(std::to_string(n));
    rec.parameters = {{"n_list", join(ns, ";")},
                      {"trials", std::to_string(options.trials)},
                      {"seed", std::to_string(options.seed)},
                      {"digits", std::to_string(options.digits)}};
    rec.metadata = base_metadata();
    rec.metadata.emplace_back("seed", std::to_string(options.seed));
    rec.metadata.emplace_back("precision", std::to_string(options.digits));
    rec.metadata.emplace_back("ratio_digits", std::to_string(kRatioDigits));
    rec.metadata.emplace_back("float_digits", std::to_string(kFloatDigits));
    rec.columns = {"n",       "l_n",         "exact_ratio",    "constant",        "residual",
                   "mc_mean_ratio", "mc_ci_low_ratio", "mc_ci_high_ratio", "log2n_frac"};

    for (const auto& row : rows) {
        const SummaryStats stats = monte_carlo(row.N, options.trials, options.seed, Statistic::protected_nodes(2),
                                               MonteCarloOptions{RandomMode::SPLIT, options.threads});
        const double n = row.N;
        rec.rows.push_back({std::to_string(row.N), to_string(l_from_m(m, row.N)),
                            row.exact_ratio.value.to_fixed(kRatioDigits), row.constant.str(),
                            row.residual.value.to_fixed(kRatioDigits), format_double(stats.mean / n),
                            format_double(stats.ci_low / n), format_double(stats.ci_high / n),
                            format_double(row.log2n_frac)});
    }
    return result;
}

CommandResult cmd_build(const std::string& path, int k) {
    if (k < 0) throw UsageError("--k must be non-negative");
    const auto strings = read_bit_strings_file(path);
    if (strings.empty()) throw UsageError("'" + path + "' holds no bit strings");
    const DstTree tree = build_from_strings(strings);

    std::vector<std::string> members;
    for (const auto index : k_protected_nodes(tree, k)) {
        const auto& label = tree.node(static_cast<std::size_t>(index)).label;
        members.push_back(label ? *label : "#" + std::to_string(index));
    }

    CommandResult result;
    auto& rec = result.record;
    rec.command = "build";
    rec.parameters = {{"input", path}, {"k", std::to_string(k)}};
    rec.metadata = base_metadata();
    rec.columns = {"nodes", "leaves", "k", "k_protected", "protected_set", "tree"};
    rec.rows.push_back({std::to_string(tree.size()), std::to_string(count_leaves(tree)), std::to_string(k),
                        std::to_string(count_k_protected(tree, k)), "{" + join(members, ",") + "}", tree.render()});
    return result;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Expected 2-protected nodes in random digital search trees: exact values, "
                 "the asymptotic constant and Monte Carlo checks.",
                 "dstprot"};
    app.set_version_flag("--version", std::string("dstprot ") + kVersion);
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"csv", Format::CSV}, {"json", Format::JSON}};
    Format format = Format::CSV;
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format {csv,json}")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    int n = 0;
    int n_cap = kDefaultNCap;
    int digits = kDefaultDigits;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    int k = 2;
    std::string input;
    std::string statistic = "protected2";
    std::vector<int> n_list;

    auto* exact = app.add_subcommand("exact", "Exact l_n for n = 0..N.\n"
                                              "CSV columns: n,l_n,l_n_over_n[,agree]; l_n as p/q, "
                                              "l_n_over_n with 15 decimals.");
    ExactMethod method = ExactMethod::RECURSION;
    const std::map<std::string, ExactMethod> methods{
        {"recursion", ExactMethod::RECURSION}, {"closed-form", ExactMethod::CLOSED_FORM}, {"both", ExactMethod::BOTH}};
    exact->add_option("--n", n, "Largest size N")->required();
    exact->add_option("--method", method, "recursion, closed-form or both")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    exact->add_option("--n-cap", n_cap, "Refuse N above this bound")->capture_default_str();
    add_format(exact);

    auto* constant = app.add_subcommand("constant", "Leading constant of l_N ~ C N.\n"
                                                    "CSV columns: digits,value,truncation_index,tail_bound.");
    constant->add_option("--digits", digits, "Decimal places, 1..1000")->capture_default_str();
    add_format(constant);

    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo over random DSTs.\n"
                    "CSV columns: n,statistic,trials,mean,variance,std_error,ci_low,ci_high,mean_over_n,"
                    "reference,z_score. Moments carry 15 significant digits; the 95% interval is mean +- "
                    "1.96 std_error; reference is the exact l_n for statistic protected2.");
    RandomMode mode = RandomMode::SPLIT;
    const std::map<std::string, RandomMode> modes{{"split", RandomMode::SPLIT}, {"bitstream", RandomMode::BIT_STREAM}};
    simulate->add_option("--n", n, "Tree size")->required();
    simulate->add_option("--trials", trials, "Number of random trees")->capture_default_str();
    simulate->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    simulate->add_option("--statistic", statistic, "protected<k> or leaves")->capture_default_str();
    simulate->add_option("--threads", threads, "Worker threads (results do not depend on it)")
        ->capture_default_str();
    simulate->add_option("--mode", mode, "split or bitstream")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    simulate->add_option("--n-cap", n_cap, "Largest n with an exact reference")->capture_default_str();
    add_format(simulate);

    auto* compare = app.add_subcommand(
        "compare", "Exact, asymptotic and simulated views per N.\n"
                   "CSV columns: n,l_n,exact_ratio,constant,residual,mc_mean_ratio,mc_ci_low_ratio,"
                   "mc_ci_high_ratio,log2n_frac.");
    compare->add_option("--n-list", n_list, "Comma-separated sizes")->delimiter(',');
    compare->add_option("--trials", trials, "Monte Carlo trials per N")->capture_default_str();
    compare->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    compare->add_option("--digits", digits, "Decimal places for the constant")->capture_default_str();
    compare->add_option("--threads", threads, "Worker threads")->capture_default_str();
    compare->add_option("--n-cap", n_cap, "Refuse sizes above this bound")->capture_default_str();
    add_format(compare);

    auto* build = app.add_subcommand("build", "Build a DST from a bit-string file (`bits` or `label:bits` per line).\n"
                                              "CSV columns: nodes,leaves,k,k_protected,protected_set,tree.");
    build->add_option("--input", input, "Path to the bit-string file")->required();
    build->add_option("--k", k, "Protection level")->capture_default_str();
    add_format(build);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        CommandResult result;
        if (*exact) {
            result = cmd_exact(n, method, n_cap);
        } else if (*constant) {
            result = cmd_constant(digits);
        } else if (*simulate) {
            result = cmd_simulate(SimulateOptions{n, trials, seed, statistic, threads, mode, n_cap});
        } else if (*compare) {
            result = cmd_compare(CompareOptions{n_list, trials, seed, digits, threads, n_cap});
        } else {
            result = cmd_build(input, k);
        }
        write(result.record, format, out);
        if (result.exit_code == kExitInconsistent) err << "error: exact routes disagree\n";
        return result.exit_code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const BitsExhausted& e) {
        err << "error: " << e.what() << '\n';
    } catch (const PrecisionError& e) {
        err << "precision error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"dstprot"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dstprot::cli
