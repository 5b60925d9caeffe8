#include "topamp/cli.hpp"

#include <CLI11.hpp>

#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"topamp: topology-aware transition amplitudes in the punctured plane"};
    app.require_subcommand(1, 1);

    topamp::cli::RunConfig cfg;
    std::string output;
    for (auto name : topamp::cli::kCommands) {
        CLI::App* sub = app.add_subcommand(std::string(name));
        sub->add_option("--config", cfg.input_path, "JSON config file")->required();
        sub->add_option("--output", output, "output file (stdout when omitted)");
        sub->add_option("--seed", cfg.seed, "random seed")->default_val(0);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors count as validation failures
        const int code = app.exit(e);
        return code == 0 ? 0 : topamp::cli::exit_code::validation;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!output.empty()) cfg.output_path = output;
    return topamp::cli::run(cfg);
}
