// Command-line front end: point evaluation, control-surface export, closed-loop
// simulation and rule-table validation for .fis controllers.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzy/dsl.hpp"
#include "fuzzy/incubator.hpp"
#include "fuzzy/inference.hpp"
#include "fuzzy/plant.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitInferenceFailure = 2;
constexpr int kExitUsage = 64;

using fuzzy::FisModel;
using fuzzy::dsl::format_sig6;
using incubator::Phase;

struct LoadedModel {
    FisModel model;
    std::optional<Phase> phase; // known for the built-in profiles
};

std::optional<LoadedModel> load_model(const std::string& spec) {
    if (spec == "phase1") {
        return LoadedModel{incubator::build_incubator_fis(Phase::Days1To17).model,
                           Phase::Days1To17};
    }
    if (spec == "phase2") {
        return LoadedModel{incubator::build_incubator_fis(Phase::Days18To21).model,
                           Phase::Days18To21};
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open model file '" << spec << "'\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto result = fuzzy::dsl::parse_model(buf.str());
    for (const auto& d : result.diagnostics) {
        std::cerr << spec << ":" << d.span.line << ":" << d.span.column << ": "
                  << (d.severity == fuzzy::dsl::Severity::Error ? "error" : "warning") << " ["
                  << d.code << "] " << d.message << "\n";
    }
    if (!result.ok()) return std::nullopt;
    return LoadedModel{*result.model, std::nullopt};
}

bool write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return false;
    }
    return true;
}

std::string format2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// ---------------------------------------------------------------- eval ----

int cmd_eval(const std::string& model_spec, double temp, double rh) {
    const auto loaded = load_model(model_spec);
    if (!loaded) return kExitValidationFailure;
    const FisModel& model = loaded->model;
    if (model.inputs.size() != 2) {
        std::cerr << "error: eval expects a model with exactly 2 inputs\n";
        return kExitUsage;
    }
    try {
        const auto out = fuzzy::infer(
            model, {{model.inputs[0].name, temp}, {model.inputs[1].name, rh}});
        std::string line;
        for (const auto& var : model.outputs) {
            if (!line.empty()) line += " ";
            line += var.name + "=" + format2(out.at(var.name));
        }
        std::cout << line << "\n";
        return kExitOk;
    } catch (const fuzzy::NoRuleFired& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInferenceFailure;
    }
}

// ------------------------------------------------------------- surface ----

int cmd_surface(const std::string& model_spec, double temp_lo, double temp_hi,
                int temp_steps, double rh_lo, double rh_hi, int rh_steps,
                const std::string& output) {
    const auto loaded = load_model(model_spec);
    if (!loaded) return kExitValidationFailure;
    const FisModel& model = loaded->model;
    if (model.inputs.size() != 2) {
        std::cerr << "error: surface expects a model with exactly 2 inputs\n";
        return kExitUsage;
    }

    std::string csv = "temp_c,rh_pct";
    for (const auto& var : model.outputs) csv += "," + var.name;
    csv += "\n";

    const auto grid_point = [](double lo, double hi, int steps, int i) {
        return steps > 1 ? lo + i * (hi - lo) / (steps - 1) : lo;
    };
    try {
        for (int i = 0; i < temp_steps; ++i) {
            const double t = grid_point(temp_lo, temp_hi, temp_steps, i);
            for (int j = 0; j < rh_steps; ++j) {
                const double h = grid_point(rh_lo, rh_hi, rh_steps, j);
                const auto out = fuzzy::infer(
                    model, {{model.inputs[0].name, t}, {model.inputs[1].name, h}});
                csv += format_sig6(t) + "," + format_sig6(h);
                for (const auto& var : model.outputs) csv += "," + format_sig6(out.at(var.name));
                csv += "\n";
            }
        }
    } catch (const fuzzy::NoRuleFired& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInferenceFailure;
    }
    return write_output(output, csv) ? kExitOk : kExitValidationFailure;
}

// ------------------------------------------------------------ simulate ----

bool apply_param(incubator::PlantParams& params, incubator::SensorModel& sensor,
                 const std::string& key, double value) {
    if (key == "ambient_temp") params.ambient_temp = value;
    else if (key == "ambient_rh") params.ambient_rh = value;
    else if (key == "heater_gain") params.heater_gain = value;
    else if (key == "temp_loss_rate") params.temp_loss_rate = value;
    else if (key == "humidifier_gain") params.humidifier_gain = value;
    else if (key == "rh_loss_rate") params.rh_loss_rate = value;
    else if (key == "dt") params.dt = value;
    else if (key == "temp_resolution") sensor.temp_resolution = value;
    else if (key == "temp_noise_bound") sensor.temp_noise_bound = value;
    else if (key == "rh_resolution") sensor.rh_resolution = value;
    else if (key == "rh_noise_bound") sensor.rh_noise_bound = value;
    else return false;
    return true;
}

bool load_params_file(const std::string& path, incubator::PlantParams& params,
                      incubator::SensorModel& sensor) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open params file '" << path << "'\n";
        return false;
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq;
        double value = 0.0;
        if (!(ls >> key)) continue; // blank line
        if (!(ls >> eq) || eq != "=" || !(ls >> value)) {
            std::cerr << path << ":" << lineno << ": expected 'key = value'\n";
            return false;
        }
        if (!apply_param(params, sensor, key, value)) {
            std::cerr << path << ":" << lineno << ": unknown parameter '" << key << "'\n";
            return false;
        }
    }
    return true;
}

int cmd_simulate(const std::string& params_path, std::uint64_t seed, int days,
                 int steps_per_day, const std::string& output) {
    incubator::PlantParams params;
    incubator::SensorModel sensor;
    if (!params_path.empty() && !load_params_file(params_path, params, sensor)) {
        return kExitUsage;
    }
    sensor.seed = seed;
    if (!params.valid()) {
        std::cerr << "error: plant parameters violate their invariants\n";
        return kExitUsage;
    }

    const incubator::IncubationSchedule schedule;
    const auto trace = incubator::run_closed_loop(
        params, sensor, [&](int day) -> const incubator::IncubatorProfile& {
            return schedule.for_day(day);
        },
        days, steps_per_day);

    if (!write_output(output, incubator::trace_to_csv(trace))) return kExitValidationFailure;

    const auto stats = incubator::band_stats(trace);
    char line[256];
    std::snprintf(line, sizeof line,
                  "summary steps=%zu temp_band_after_day1=%.6f rh_band_days2_17=%.6f "
                  "rh_band_days19_21=%.6f\n",
                  trace.records.size(), stats.temp_after_day1, stats.rh_days2_to_17,
                  stats.rh_days19_to_21);
    std::cout << line;
    return kExitOk;
}

// ------------------------------------------------------------ validate ----

struct TableRow {
    double temp;
    double rh;
    double heat;
    double fan;
};

// Result tables from the paper; phase-2 prose cites (38.2, 64.10) as the
// anchor but the table's 5.00/5.00 row reads 62.60, which is what we use.
const std::vector<TableRow>& table_phase1() {
    static const std::vector<TableRow> rows = {
        {0.00, 34.30, 7.02, 6.06},  {24.70, 45.20, 6.38, 5.79}, {34.30, 48.80, 5.68, 5.37},
        {35.50, 51.20, 5.33, 5.00}, {38.00, 53.60, 5.00, 5.00}, {41.60, 58.40, 4.80, 4.40},
        {50.00, 17.50, 4.25, 7.20}, {58.40, 62.00, 3.43, 3.92}, {64.50, 69.30, 3.19, 3.65},
        {76.50, 75.30, 3.09, 3.64},
    };
    return rows;
}

const std::vector<TableRow>& table_phase2() {
    static const std::vector<TableRow> rows = {
        {0.00, 34.10, 6.98, 6.28},  {22.30, 40.40, 5.80, 6.00}, {33.10, 52.20, 5.26, 5.47},
        {35.50, 59.20, 5.06, 5.20}, {38.20, 62.60, 5.00, 5.00}, {40.40, 64.10, 4.86, 4.17},
        {51.20, 19.90, 4.25, 7.60}, {57.20, 80.10, 3.23, 3.52}, {68.10, 85.70, 3.19, 3.25},
        {76.50, 87.30, 3.06, 3.04},
    };
    return rows;
}

// Direction agreement against a reference printed at 2 decimals: rows at
// exactly 5.00 carry no direction, so they get the +-0.5 anchor band instead.
bool direction_ok(double computed, double reference) {
    if (std::fabs(reference - 5.0) < 0.005) return std::fabs(computed - 5.0) <= 0.5;
    return (computed - 5.0) * (reference - 5.0) > 0.0;
}

double humidity_optimal_peak(const FisModel& model) {
    const auto* humidity = model.find_input("humidity");
    const auto* term = humidity ? humidity->find_term("optimal") : nullptr;
    if (term == nullptr) return 0.0;
    if (const auto* t = std::get_if<fuzzy::Triangular>(&term->mf)) return t->m;
    return std::get<fuzzy::Gaussian>(term->mf).m;
}

int cmd_validate(const std::string& model_spec, int phase_flag) {
    const auto loaded = load_model(model_spec);
    if (!loaded) return kExitValidationFailure;
    const FisModel& model = loaded->model;

    Phase phase;
    if (loaded->phase) {
        phase = *loaded->phase;
    } else if (phase_flag == 1 || phase_flag == 2) {
        phase = phase_flag == 1 ? Phase::Days1To17 : Phase::Days18To21;
    } else {
        std::cerr << "error: --phase 1|2 is required for file-based models\n";
        return kExitUsage;
    }
    for (const char* required : {"temperature", "humidity"}) {
        if (model.find_input(required) == nullptr) {
            std::cerr << "error: validation needs an input named '" << required << "'\n";
            return kExitUsage;
        }
    }
    for (const char* required : {"heat", "fan"}) {
        if (model.find_output(required) == nullptr) {
            std::cerr << "error: validation needs an output named '" << required << "'\n";
            return kExitUsage;
        }
    }

    const auto& rows = phase == Phase::Days1To17 ? table_phase1() : table_phase2();
    const auto eval = [&](double t, double h) {
        return fuzzy::infer(model, {{"temperature", t}, {"humidity", h}});
    };

    bool all_ok = true;
    try {
        for (const auto& row : rows) {
            const auto out = eval(row.temp, row.rh);
            const double heat = out.at("heat");
            const double fan = out.at("fan");
            const bool ok = direction_ok(heat, row.heat) && direction_ok(fan, row.fan);
            all_ok &= ok;
            std::printf("row temp=%.2f rh=%.2f paper=(%.2f,%.2f) computed=(%.2f,%.2f) %s\n",
                        row.temp, row.rh, row.heat, row.fan, heat, fan,
                        ok ? "ok" : "DISAGREE");
        }

        // anchor row: the table's 5.00/5.00 entry must land within +-0.5
        for (const auto& row : rows) {
            if (std::fabs(row.heat - 5.0) < 0.005 && std::fabs(row.fan - 5.0) < 0.005) {
                const auto out = eval(row.temp, row.rh);
                const bool ok = std::fabs(out.at("heat") - 5.0) <= 0.5 &&
                                std::fabs(out.at("fan") - 5.0) <= 0.5;
                all_ok &= ok;
                std::printf("anchor temp=%.2f rh=%.2f computed=(%.2f,%.2f) %s\n", row.temp,
                            row.rh, out.at("heat"), out.at("fan"), ok ? "ok" : "FAIL");
                break;
            }
        }

        // monotone trends: heat falls with temperature, fan falls with humidity
        const double peak = humidity_optimal_peak(model);
        int heat_viol = 0;
        double prev = std::numeric_limits<double>::infinity();
        for (double t = 0.0; t <= 80.0 + 1e-9; t += 0.5) {
            const double heat = eval(t, peak).at("heat");
            if (heat > prev + 1e-12) ++heat_viol;
            prev = heat;
        }
        int fan_viol = 0;
        prev = std::numeric_limits<double>::infinity();
        for (double h = 0.0; h <= 100.0 + 1e-9; h += 0.5) {
            const double fan = eval(38.0, h).at("fan");
            if (fan > prev + 1e-12) ++fan_viol;
            prev = fan;
        }
        all_ok &= heat_viol == 0 && fan_viol == 0;
        std::printf("monotone heat(temperature) at rh=%s: %s\n", format_sig6(peak).c_str(),
                    heat_viol == 0 ? "ok" : "FAIL");
        std::printf("monotone fan(humidity) at temp=38: %s\n",
                    fan_viol == 0 ? "ok" : "FAIL");
    } catch (const fuzzy::NoRuleFired& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInferenceFailure;
    }

    std::printf("validation %s\n", all_ok ? "passed" : "failed");
    return all_ok ? kExitOk : kExitValidationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mamdani fuzzy incubator controller tool"};
    app.require_subcommand(1);

    std::string model_spec = "phase1";
    double temp = 0.0;
    double rh = 0.0;
    std::string output = "-";

    auto* eval = app.add_subcommand("eval", "Evaluate the controller at one point");
    eval->add_option("--model", model_spec, "Built-in profile (phase1|phase2) or .fis file");
    eval->add_option("--temp", temp, "Temperature in Celsius")->required();
    eval->add_option("--rh", rh, "Relative humidity in percent")->required();

    auto* surface = app.add_subcommand("surface", "Export a control surface as CSV");
    double temp_lo = 0.0, temp_hi = 80.0, rh_lo = 0.0, rh_hi = 100.0;
    int temp_steps = 81, rh_steps = 101;
    surface->add_option("--model", model_spec, "Built-in profile or .fis file");
    surface->add_option("--temp-lo", temp_lo, "Temperature grid start");
    surface->add_option("--temp-hi", temp_hi, "Temperature grid end");
    surface->add_option("--temp-steps", temp_steps, "Temperature grid points")
        ->check(CLI::PositiveNumber);
    surface->add_option("--rh-lo", rh_lo, "Humidity grid start");
    surface->add_option("--rh-hi", rh_hi, "Humidity grid end");
    surface->add_option("--rh-steps", rh_steps, "Humidity grid points")
        ->check(CLI::PositiveNumber);
    surface->add_option("--output", output, "Output path, '-' for stdout");

    auto* simulate = app.add_subcommand("simulate", "Run the closed-loop incubation");
    std::string params_path;
    std::uint64_t seed = 0;
    int days = 21;
    int steps_per_day = 1440;
    simulate->add_option("--params", params_path, "Plant/sensor parameter file");
    simulate->add_option("--seed", seed, "Sensor noise seed");
    simulate->add_option("--days", days, "Incubation days to simulate")
        ->check(CLI::Range(1, 21));
    simulate->add_option("--steps-per-day", steps_per_day, "Control steps per day")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--output", output, "Trace CSV path, '-' for stdout");

    auto* validate = app.add_subcommand("validate", "Check a model against the result tables");
    int phase_flag = 0;
    validate->add_option("--model", model_spec, "Built-in profile or .fis file");
    validate->add_option("--phase", phase_flag, "Result table to use for file models (1|2)")
        ->check(CLI::Range(1, 2));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (eval->parsed()) return cmd_eval(model_spec, temp, rh);
    if (surface->parsed()) {
        return cmd_surface(model_spec, temp_lo, temp_hi, temp_steps, rh_lo, rh_hi, rh_steps,
                           output);
    }
    if (simulate->parsed()) return cmd_simulate(params_path, seed, days, steps_per_day, output);
    if (validate->parsed()) return cmd_validate(model_spec, phase_flag);
    return kExitUsage;
}
