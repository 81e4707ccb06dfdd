#include <cstdio>
#include <iostream>

#include "cli_main.hpp"
#include "meterflow/bench.hpp"

namespace {

// Integer with an optional decimal exponent: "27000000" or "27e6".
std::uint64_t parse_count(const std::string& text) {
    const auto e = text.find_first_of("eE");
    std::uint64_t mantissa = std::stoull(text.substr(0, e));
    if (e != std::string::npos) {
        for (int k = std::stoi(text.substr(e + 1)); k > 0; --k) mantissa *= 10;
    }
    return mantissa;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace meterflow;
    CLI::App app{"Stage benchmarks, storage cost and data volume estimates", "bench"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    auto* run = app.add_subcommand("run", "Time every stage against a recursive-copy baseline");
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_option("--out", out_path, "CSV report path")->required();

    std::string data_gb, alpha;
    std::uint32_t months = 12;
    bool table = false;
    auto* cost = app.add_subcommand("cost", "Cumulative cloud storage cost");
    cost->add_option("--D,--data-gb", data_gb, "GB of new data per month")->required();
    cost->add_option("--alpha", alpha, "Price per GB per month")->required();
    cost->add_option("--months", months, "Months of service")->required()->check(CLI::PositiveNumber);
    cost->add_flag("--table", table, "Print C(1..m)");

    std::string xml_dir, parsed_file;
    auto* reduction = app.add_subcommand("reduction", "Storage saved by the parsed format");
    reduction->add_option("xmldir", xml_dir)->required();
    reduction->add_option("parsedfile", parsed_file)->required();

    std::string meters = "27e6", readings = "1", bytes = "1000";
    auto* volume = app.add_subcommand("volume", "Daily data volume of a meter fleet");
    volume->add_option("--meters", meters)->capture_default_str();
    volume->add_option("--readings-per-day", readings)->capture_default_str();
    volume->add_option("--bytes-per-reading", bytes)->capture_default_str();

    return tools::run_app(app, argc, argv, [&] {
        if (*run) {
            const BenchConfig config = BenchConfig::load(config_path);
            run_bench(config, out_path, &std::cerr);
        } else if (*cost) {
            const Decimal d = Decimal::parse(data_gb);
            const Decimal a = Decimal::parse(alpha);
            if (table) {
                const auto rows = storage_cost_table(d, a, months);
                for (std::size_t m = 0; m < rows.size(); ++m) std::cout << m + 1 << ' ' << rows[m].to_string() << '\n';
            } else {
                std::cout << storage_cost(d, a, months).to_string() << '\n';
            }
        } else if (*reduction) {
            std::printf("%.4f\n", size_reduction(xml_dir, parsed_file));
        } else if (*volume) {
            const std::uint64_t v = daily_volume_bytes(parse_count(meters), parse_count(readings), parse_count(bytes));
            std::cout << v << " bytes/day (" << format_si_bytes(v) << "/day)\n";
        }
    });
}
