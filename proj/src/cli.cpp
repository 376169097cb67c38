#include "learnsim/cli.hpp"

#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "learnsim/experiments.hpp"
#include "learnsim/io.hpp"

namespace learnsim {
namespace {

struct Outputs {
  std::string csv;
  std::string svg;
};

void add_outputs(CLI::App* cmd, Outputs& outputs) {
  cmd->add_option("--csv", outputs.csv, "Write the trajectory as CSV");
  cmd->add_option("--svg", outputs.svg, "Write a 640x480 SVG plot");
}

std::vector<std::string> default_channels(std::size_t categories) {
  std::vector<std::string> channels{"Z"};
  if (categories > 1) channels.push_back("Z" + std::to_string(categories));
  channels.emplace_back("r");
  channels.emplace_back("P");
  return channels;
}

void emit(const Trajectory& traj, const Outputs& outputs, const std::vector<std::string>& channels,
          std::ostream& out) {
  if (!outputs.csv.empty()) write_csv(traj, outputs.csv);
  if (!outputs.svg.empty()) {
    const auto& chosen = channels.empty() ? default_channels(traj.categories()) : channels;
    write_file_atomic(outputs.svg, render_svg(traj, chosen));
  }
  const TrajectoryRow& last = traj.rows.back();
  out << "t=" << format_number(last.t) << " Z=" << format_number(last.Z_total)
      << " Pr=" << format_number(last.Pr) << " r=" << format_number(last.r) << '\n';
}

std::string study_table(const StudyResult& study, const std::string& value_name) {
  std::string table = value_name + ",Z,Pr,mean_lesson_r,status\n";
  for (const auto& s : study.scenarios) {
    table += format_number(s.value);
    if (s.ok) {
      table += "," + format_number(s.Z_total) + "," + format_number(s.Pr) + "," +
               format_number(s.mean_lesson_r) + ",ok\n";
    } else {
      std::string why = s.diagnostic;
      std::replace(why.begin(), why.end(), '"', '\'');
      table += ",,,,\"" + why + "\"\n";
    }
  }
  return table;
}

void emit_table(const std::string& table, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << table;
  } else {
    write_file_atomic(path, table);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Teacher-student learning model simulator", "learnsim"};
  app.require_subcommand(1);

  std::string config_path;
  Outputs outputs;
  std::vector<std::string> channels;

  auto* run_cmd = app.add_subcommand("run", "Simulate a JSON config");
  run_cmd->add_option("--config", config_path, "Config file")->required();
  add_outputs(run_cmd, outputs);
  run_cmd->add_option("--channels", channels, "SVG channels (comma list)")->delimiter(',');

  auto* pr1_cmd = app.add_subcommand("replicate-pr1", "Rerun the two-component school day");
  add_outputs(pr1_cmd, outputs);
  pr1_cmd->add_option("--channels", channels, "SVG channels (comma list)")->delimiter(',');

  std::vector<double> tp_values;
  std::string table_path;
  auto* breaks_cmd = app.add_subcommand("breaks", "Vary the break length");
  breaks_cmd->add_option("--config", config_path, "Base config")->required();
  breaks_cmd->add_option("--tp", tp_values, "Break lengths (comma list)")->delimiter(',')->required();
  breaks_cmd->add_option("--csv", table_path, "Write the table to a file");

  std::string param_path;
  std::vector<double> values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one scalar parameter");
  sweep_cmd->add_option("--config", config_path, "Base config")->required();
  sweep_cmd->add_option("--param", param_path, "b, k1..k4, P0, dt, alphaN, gammaN")->required();
  sweep_cmd->add_option("--values", values, "Values (comma list)")->delimiter(',')->required();
  sweep_cmd->add_option("--csv", table_path, "Write the table to a file");

  double u_min = 0.0, u_max = 0.0;
  int grid = 0;
  std::string objective = "z";
  auto* opt_cmd = app.add_subcommand("optimize-u", "Grid search for the best constant requirement U");
  opt_cmd->add_option("--config", config_path, "Base config")->required();
  opt_cmd->add_option("--min", u_min, "Lower bound of U")->required();
  opt_cmd->add_option("--max", u_max, "Upper bound of U")->required();
  opt_cmd->add_option("--grid", grid, "Number of grid points (>= 2)")->required();
  opt_cmd->add_option("--objective", objective, "z (terminal knowledge) or pr (strength)")
      ->check(CLI::IsMember({"z", "pr"}));
  opt_cmd->add_option("--csv", table_path, "Write all grid evaluations to a file");

  std::vector<std::string> argv_storage{"learnsim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (run_cmd->parsed()) {
      emit(run(load_config(config_path)), outputs, channels, out);
    } else if (pr1_cmd->parsed()) {
      emit(replicate_pr1(), outputs, channels, out);
    } else if (breaks_cmd->parsed()) {
      const auto base = load_config(config_path);
      emit_table(study_table(break_length_study(base, tp_values), "Tp"), table_path, out);
    } else if (sweep_cmd->parsed()) {
      const auto base = load_config(config_path);
      emit_table(study_table(parameter_sweep(base, param_path, values), param_path), table_path, out);
    } else if (opt_cmd->parsed()) {
      const auto base = load_config(config_path);
      const auto best = optimize_constant_u(base, u_min, u_max, grid,
                                            objective == "pr" ? Objective::TerminalPr : Objective::TerminalZ);
      if (!table_path.empty()) {
        std::string table = "U,value\n";
        for (const auto& p : best.evaluations) table += format_number(p.U) + "," + format_number(p.value) + "\n";
        write_file_atomic(table_path, table);
      }
      out << "U*=" << format_number(best.U) << " value=" << format_number(best.value) << '\n';
    }
  } catch (const ValidationError& e) {
    for (const auto& d : e.diagnostics()) err << "error: " << d << '\n';
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace learnsim
