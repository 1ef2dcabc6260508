#include "qp/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

std::vector<int> parseBlocks(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw qp::InputError("--blocks expects a comma list of positive integers, got '" + text + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::uint64_t parseSeed(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw qp::InputError(std::string(what) + " must be a non-negative integer, got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for quasi-Poisson structures on block-unipotent groups"};
    app.require_subcommand(1);

    std::size_t n = 0, samples = 100;
    std::string blocks, file, format = "text", pair, seedText;
    unsigned parallel = 1;
    bool sampled = false, timings = false;

    for (const auto& name : qp::commandNames()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--n", n, "matrix size N")->check(CLI::PositiveNumber);
        sub->add_option("--blocks", blocks, "partition of N, e.g. 1,2");
        sub->add_option("--file", file, "quadruple JSON file")->check(CLI::ExistingFile);
        sub->add_option("--samples", samples, "sample points for sampled checks")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seedText, "sampler seed (default $QP_SEED, else 7)");
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--parallel", parallel, "worker threads for sample points (0 = all cores)");
        sub->add_flag("--timings", timings, "include elapsed times in JSON output");
        if (name == "group-bracket") sub->add_option("--pair", pair, "coordinates k,l:m,n")->required();
        if (name == "moment-check") sub->add_flag("--sampled", sampled, "also run the Gauss moment map on D");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    qp::SuiteResult result;
    qp::SuiteConfig cfg;
    try {
        cfg.n = n;
        cfg.file = file;
        if (!blocks.empty()) cfg.blocks = parseBlocks(blocks);
        if (!file.empty() && (n || !blocks.empty()))
            throw qp::InputError("--file cannot be combined with --n/--blocks");
        cfg.sampling.samples = samples;
        if (!seedText.empty()) {
            cfg.sampling.seed = parseSeed(seedText, "--seed");
        } else if (const char* env = std::getenv("QP_SEED"); env && *env) {
            cfg.sampling.seed = parseSeed(env, "QP_SEED");
        }
        cfg.sampling.threads = parallel ? parallel : std::max(1u, std::thread::hardware_concurrency());
        cfg.sampled = sampled;
        if (!pair.empty()) cfg.pair = qp::parsePair(pair);
        result = qp::runSuite(command, cfg);
    } catch (const qp::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n" << app.get_subcommand(command)->help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (format == "json") {
        std::cout << qp::reportDocument(command, cfg, result, timings).dump(2) << "\n";
    } else {
        std::cout << result.text << qp::reportToText(result.report);
        std::size_t counts[3] = {0, 0, 0};
        for (const auto& it : result.report.items()) ++counts[int(it.status)];
        std::cout << command << ": " << counts[0] << " pass, " << counts[1] << " fail, " << counts[2]
                  << " inconclusive\n";
    }
    return result.report.passed() ? 0 : 1;
}
