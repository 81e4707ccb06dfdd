#include <cstdio>
#include <iostream>

#include "cli_main.hpp"
#include "meterflow/generator.hpp"
#include "meterflow/pipeline.hpp"

int main(int argc, char** argv) {
    using namespace meterflow;
    CLI::App app{"Smart-meter batch pipeline: parse, validate and aggregate XML readings", "pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    bool keep = false;
    auto* run = app.add_subcommand("run", "Run all stages, per batch when batch_dirs is configured");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_flag("--keep-intermediates", keep, "Keep PARSED_FILE after validation");

    std::string stage_name;
    auto* stage = app.add_subcommand("stage", "Run a single stage on the unbatched layout");
    stage->add_option("name", stage_name, "parse | validate | aggregate")
        ->required()
        ->check(CLI::IsMember({"parse", "validate", "aggregate"}));
    stage->add_option("--config", config_path, "key=value config file")->required();

    GeneratorConfig gen;
    std::string out_dir;
    auto* g = app.add_subcommand("gen", "Generate a deterministic synthetic corpus");
    g->add_option("--files", gen.file_count, "Number of XML files")->required();
    g->add_option("--meters", gen.meters, "Number of distinct meters")->required();
    g->add_option("--invalid-ratio", gen.invalid_ratio, "Fraction of readings with an unknown type code")->required();
    g->add_option("--seed", gen.seed, "Random seed")->required();
    g->add_option("--out", out_dir, "Output directory")->required();
    g->add_option("--readings-per-file", gen.readings_per_file, "Readings per file")->capture_default_str();
    g->add_option("--date", gen.date, "Calendar day of the readings (YYYY-MM-DD)")->capture_default_str();
    g->add_option("--batches", gen.batches, "Split files into this many batch-NN subdirectories");

    auto* master = app.add_subcommand("master", "Print the reading-type master file");

    std::uint64_t batches = 0;
    double seconds = 0;
    auto* project = app.add_subcommand("project", "Sequential run time for a number of batches");
    project->add_option("--batches", batches)->required();
    project->add_option("--seconds-per-batch", seconds)->required();

    return tools::run_app(app, argc, argv, [&] {
        if (*run) {
            PipelineConfig config = PipelineConfig::load(config_path);
            if (keep) config.keep_intermediates = true;
            write_summary(run_batches(config, &std::cerr), std::cout);
        } else if (*stage) {
            PipelineConfig config = PipelineConfig::load(config_path);
            config.validate();
            if (stage_name == "parse") stage_parse(config);
            else if (stage_name == "validate") stage_validate(config);
            else stage_aggregate(config);
        } else if (*g) {
            const GroundTruth truth = generate_corpus(gen, out_dir);
            std::cout << truth.sidecar_text();
        } else if (*master) {
            std::cout << master_file_text();
        } else if (*project) {
            const double total = projected_run_seconds(batches, seconds);
            std::printf("%llu batches x %g s = %g s (%.1f min)\n", static_cast<unsigned long long>(batches), seconds,
                        total, total / 60.0);
        }
    });
}
