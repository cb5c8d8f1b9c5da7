#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "bfmin/binarize.hpp"
#include "bfmin/error.hpp"
#include "bfmin/espresso.hpp"
#include "bfmin/exact.hpp"
#include "bfmin/learn.hpp"
#include "bfmin/pla.hpp"
#include "bfmin/synth.hpp"

namespace {

using namespace bfmin;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Results go to --out when given, otherwise to stdout.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + out_path + "'");
    out << content;
}

bool token_safe(const std::string& name) {
    return !name.empty() && name.find(' ') == std::string::npos &&
           name.find('\t') == std::string::npos;
}

std::string trimmed(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    return std::string(s.substr(begin, s.find_last_not_of(" \t\r") - begin + 1));
}

// The config file is flat `key = value` lines scoped to the subcommand on
// the command line. CLI11 only reads a config option owned by the root
// command, so the file is expanded into `--key=value` tokens by hand,
// inserted where --config appeared. Keys already given as flags are
// skipped: explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::size_t config_at = args.size();
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_at = i + 1;
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_at = i;
            path = args[i].substr(9);
            break;
        }
    }
    if (config_at == args.size()) return args;

    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::FileError::Missing(path);
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(in, line)) {
        const std::string entry = trimmed(line);
        if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw CLI::ConfigError("config line is not `key = value`: " + entry);
        const std::string key = trimmed(entry.substr(0, eq));
        const std::string value = trimmed(entry.substr(eq + 1));
        if (key.empty()) throw CLI::ConfigError("config line has no key: " + entry);
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) injected.push_back(flag + "=" + value);
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(config_at) + 1,
                injected.begin(), injected.end());
    return args;
}

// PLA .ilb/.ob labels are whitespace-separated tokens, so they are only
// emitted when every name survives that round trip.
std::vector<std::string> pla_input_labels(const Schema& schema) {
    auto names = bit_names(schema);
    for (const std::string& name : names)
        if (!token_safe(name)) return {};
    return names;
}

struct TableArgs {
    std::string data;
    std::string delimiter = ",";
    void add_to(CLI::App* cmd) {
        cmd->add_option("--data", data, "Delimited dataset file")->required();
        cmd->add_option("--delimiter", delimiter, "Field delimiter")
            ->check([](const std::string& s) {
                return s.size() == 1 ? std::string{} : std::string("must be one character");
            });
    }
    RawTable read() const { return read_delimited_file(data, delimiter[0]); }
};

struct BinarizeArgs {
    BinarizeConfig config;
    std::string encoding = "level-binary";
    std::string policy = "majority";
    void add_to(CLI::App* cmd) {
        cmd->add_option("--label", config.label_column, "Label column name");
        cmd->add_option("--levels", config.levels, "Max levels per numeric feature")
            ->check(CLI::Range(1u, 1u << 16));
        cmd->add_option("--encoding", encoding, "Bit encoding for multi-level features")
            ->check(CLI::IsMember({"level-binary", "one-hot"}));
        cmd->add_flag("--equal-width", config.equal_width,
                      "Equal-width numeric cuts instead of equal-frequency");
        cmd->add_flag("--missing-category", config.missing_category,
                      "Treat empty categorical cells as their own category");
        cmd->add_option("--policy", policy,
                        "Conflict policy: error, majority, threshold:F, prefer-positive");
    }
    BinarizeConfig resolved() const {
        BinarizeConfig out = config;
        out.encoding = encoding == "one-hot" ? Encoding::one_hot : Encoding::level_binary;
        return out;
    }
};

struct EngineArgs {
    std::string engine = "heuristic";
    ExactLimits limits;
    void add_to(CLI::App* cmd, bool with_default = true) {
        auto* opt = cmd->add_option("--engine", engine, "Minimization engine")
                        ->check(CLI::IsMember({"exact", "heuristic"}));
        if (!with_default) {
            engine.clear();
            opt->description("Minimization engine (default: the model's)");
        }
        cmd->add_option("--max-primes", limits.max_primes, "Exact-engine prime ceiling");
        cmd->add_option("--max-nodes", limits.max_nodes, "Exact-engine search-node ceiling");
    }
};

std::string metrics_text(const Metrics& m) {
    std::string out;
    out += "tp=" + std::to_string(m.tp) + "\n";
    out += "tn=" + std::to_string(m.tn) + "\n";
    out += "fp=" + std::to_string(m.fp) + "\n";
    out += "fn=" + std::to_string(m.fn) + "\n";
    out += "accuracy=" + format_double(m.accuracy()) + "\n";
    out += "precision=" + format_double(m.precision()) + "\n";
    out += "recall=" + format_double(m.recall()) + "\n";
    return out;
}

std::vector<LabeledBits> labeled_rows(const Schema& schema, const RawTable& table) {
    const EncodedTable encoded = encode_table(schema, table, true);
    std::vector<LabeledBits> rows;
    rows.reserve(encoded.bits.size());
    for (std::size_t i = 0; i < encoded.bits.size(); ++i)
        rows.push_back({encoded.bits[i], encoded.labels[i], 1});
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rule-learning binary classifier via two-level Boolean minimization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "bfmin 0.1.0");

    // Consumed by expand_config before CLI11 sees the command line; the
    // option only exists so each subcommand documents and accepts it.
    std::string config_path;
    const std::string config_help = "Flat `key = value` config file; explicit flags win";

    auto* binarize_cmd =
        app.add_subcommand("binarize", "Encode a labeled dataset as a PLA minimization problem");
    TableArgs bin_table;
    BinarizeArgs bin_bits;
    std::string bin_out, bin_schema_out;
    bin_table.add_to(binarize_cmd);
    bin_bits.add_to(binarize_cmd);
    binarize_cmd->add_option("--out", bin_out, "PLA output path (default stdout)");
    binarize_cmd->add_option("--schema-out", bin_schema_out, "Also write the schema text here");
    binarize_cmd->add_option("--config", config_path, config_help);
    binarize_cmd->callback([&] {
        const RawTable table = bin_table.read();
        const BinarizeConfig config = bin_bits.resolved();
        const Schema schema = infer_schema(table, config);
        const Problem problem = build_sets(schema.total_width, labeled_rows(schema, table),
                                           ConflictPolicy::parse(bin_bits.policy));
        if (!bin_schema_out.empty()) emit(bin_schema_out, schema_to_text(schema));
        const std::string ob = token_safe(config.label_column) ? config.label_column : "";
        emit(bin_out, write_pla(problem, pla_input_labels(schema), ob));
    });

    auto* minimize_cmd = app.add_subcommand("minimize", "Minimize a PLA problem to a cover");
    std::string min_in, min_out;
    EngineArgs min_engine;
    minimize_cmd->add_option("--in", min_in, "PLA problem file")->required();
    min_engine.add_to(minimize_cmd);
    minimize_cmd->add_option("--out", min_out, "PLA cover output path (default stdout)");
    minimize_cmd->add_option("--config", config_path, config_help);
    minimize_cmd->callback([&] {
        const PlaProblem pla = read_pla(slurp(min_in));
        const Cover cover = parse_engine(min_engine.engine) == Engine::exact
                                ? minimize_exact(pla.problem, min_engine.limits)
                                : minimize_heuristic(pla.problem);
        emit(min_out, write_pla(cover, pla.input_labels, pla.output_label));
    });

    auto* fit_cmd = app.add_subcommand("fit", "Fit a rule model to a labeled dataset");
    TableArgs fit_table;
    BinarizeArgs fit_bits;
    EngineArgs fit_engine;
    std::uint32_t fit_part_count = 1;
    std::string fit_out, fit_rules_out;
    fit_table.add_to(fit_cmd);
    fit_bits.add_to(fit_cmd);
    fit_engine.add_to(fit_cmd);
    fit_cmd->add_option("--parts", fit_part_count, "Partition count for split-then-merge fitting")
        ->check(CLI::Range(1u, 1u << 16));
    fit_cmd->add_option("--out", fit_out, "Model output path (default stdout)");
    fit_cmd->add_option("--rules", fit_rules_out, "Also write readable rule text here");
    fit_cmd->add_option("--config", config_path, config_help);
    fit_cmd->callback([&] {
        FitConfig config;
        config.binarize = fit_bits.resolved();
        config.policy = ConflictPolicy::parse(fit_bits.policy);
        config.engine = parse_engine(fit_engine.engine);
        config.limits = fit_engine.limits;
        const RawTable table = fit_table.read();
        const Model model = fit_part_count == 1 ? fit_model(table, config)
                                                : fit_parts(table, config, fit_part_count);
        if (!fit_rules_out.empty()) {
            std::string text;
            for (const std::string& line : rules_to_text(model.rules)) text += line + "\n";
            emit(fit_rules_out, text);
        }
        emit(fit_out, model_to_text(model));
    });

    auto* predict_cmd = app.add_subcommand("predict", "Append model predictions to a dataset");
    TableArgs predict_table_args;
    std::string predict_model, predict_out;
    predict_cmd->add_option("--model", predict_model, "Model file from fit/merge/stream")
        ->required();
    predict_table_args.add_to(predict_cmd);
    predict_cmd->add_option("--out", predict_out, "Output path (default stdout)");
    predict_cmd->add_option("--config", config_path, config_help);
    predict_cmd->callback([&] {
        const Model model = model_from_text(slurp(predict_model));
        RawTable table = predict_table_args.read();
        const std::vector<int> predictions = predict_table(model.rules, table);
        table.columns.push_back("prediction");
        for (std::size_t i = 0; i < table.rows.size(); ++i)
            table.rows[i].push_back(std::to_string(predictions[i]));
        emit(predict_out, format_delimited(table, predict_table_args.delimiter[0]));
    });

    auto* eval_cmd = app.add_subcommand("eval", "Score a model against a labeled dataset");
    TableArgs eval_table;
    std::string eval_model, eval_out;
    eval_cmd->add_option("--model", eval_model, "Model file")->required();
    eval_table.add_to(eval_cmd);
    eval_cmd->add_option("--out", eval_out, "Output path (default stdout)");
    eval_cmd->add_option("--config", config_path, config_help);
    eval_cmd->callback([&] {
        const Model model = model_from_text(slurp(eval_model));
        emit(eval_out, metrics_text(evaluate(model.rules, eval_table.read())));
    });

    auto* merge_cmd = app.add_subcommand("merge", "Merge part models into one global model");
    std::vector<std::string> merge_parts;
    EngineArgs merge_engine;
    std::string merge_policy = "majority", merge_out;
    merge_cmd->add_option("--part", merge_parts, "Part model file (repeat per part)")
        ->required()
        ->expected(1, -1);
    merge_engine.add_to(merge_cmd);
    merge_cmd->add_option("--policy", merge_policy, "Cross-part conflict policy");
    merge_cmd->add_option("--out", merge_out, "Model output path (default stdout)");
    merge_cmd->add_option("--config", config_path, config_help);
    merge_cmd->callback([&] {
        std::vector<Model> models;
        for (const std::string& path : merge_parts) models.push_back(model_from_text(slurp(path)));
        const std::string schema_text = schema_to_text(models.front().rules.schema);
        std::vector<PartSummary> parts;
        std::uint64_t rows0 = 0, rows1 = 0;
        for (const Model& m : models) {
            if (schema_to_text(m.rules.schema) != schema_text)
                throw DataError("part schemas differ; parts must share one schema");
            parts.push_back({m.rules.cover, m.on, m.off});
            rows0 += m.rules.rows0;
            rows1 += m.rules.rows1;
        }
        Model merged = merge_fit(models.front().rules.schema, parts,
                                 parse_engine(merge_engine.engine),
                                 ConflictPolicy::parse(merge_policy), merge_engine.limits);
        merged.rules.rows0 = rows0;
        merged.rules.rows1 = rows1;
        emit(merge_out, model_to_text(merged));
    });

    auto* stream_cmd = app.add_subcommand("stream", "Update a model with a new labeled batch");
    TableArgs stream_table;
    EngineArgs stream_engine;
    std::string stream_model, stream_policy = "majority", stream_out;
    stream_cmd->add_option("--model", stream_model, "Previous model file")->required();
    stream_table.add_to(stream_cmd);
    stream_engine.add_to(stream_cmd, false);
    stream_cmd->add_option("--policy", stream_policy, "Conflict policy for the new batch");
    stream_cmd->add_option("--out", stream_out, "Model output path (default stdout)");
    stream_cmd->add_option("--config", config_path, config_help);
    stream_cmd->callback([&] {
        const Model previous = model_from_text(slurp(stream_model));
        const auto rows = labeled_rows(previous.rules.schema, stream_table.read());
        const Engine engine = stream_engine.engine.empty() ? previous.rules.engine
                                                           : parse_engine(stream_engine.engine);
        const Model next = update(previous, rows, engine, ConflictPolicy::parse(stream_policy),
                                  stream_engine.limits);
        emit(stream_out, model_to_text(next));
    });

    auto* gen_cmd = app.add_subcommand("gen", "Generate a planted-rule labeled dataset");
    PlantedSpec gen_spec;
    std::vector<std::string> gen_planted;
    std::string gen_out, gen_delimiter = ",";
    gen_cmd->add_option("--width", gen_spec.width, "Number of binary features")
        ->required()
        ->check(CLI::Range(1u, 1u << 16));
    gen_cmd->add_option("--planted", gen_planted, "Planted cube, e.g. 1--0 (repeat per rule)")
        ->required()
        ->expected(1, -1);
    gen_cmd->add_option("--rows", gen_spec.n_rows, "Total row count")->required();
    gen_cmd->add_option("--positive-fraction", gen_spec.positive_fraction,
                        "Fraction of class-1 rows")
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--seed", gen_spec.seed, "RNG seed")->required();
    gen_cmd->add_option("--delimiter", gen_delimiter, "Field delimiter")
        ->check([](const std::string& s) {
            return s.size() == 1 ? std::string{} : std::string("must be one character");
        });
    gen_cmd->add_option("--out", gen_out, "Output path (default stdout)");
    gen_cmd->add_option("--config", config_path, config_help);
    gen_cmd->callback([&] {
        for (const std::string& text : gen_planted) {
            Cube cube = Cube::parse(text);
            if (cube.width() != gen_spec.width)
                throw DataError("planted cube '" + text + "' does not have --width positions");
            gen_spec.rules.push_back(std::move(cube));
        }
        emit(gen_out, format_delimited(generate_planted(gen_spec), gen_delimiter[0]));
    });

    try {
        std::vector<std::string> args =
            expand_config(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors are exit 1, --help is 0
    } catch (const bfmin::IntractableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
