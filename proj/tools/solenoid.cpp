// Command-line front end: classify, compare, code, holonomy, measure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "solenoid/commands.hpp"
#include "solenoid/errors.hpp"

namespace {

std::string format_seconds(double s) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(3);
  ss << s;
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact classification of solenoids and Cantor group actions"};
  app.require_subcommand(1);
  solenoid::CommandOptions opts;
  std::string lambda_text, out_path;
  std::vector<std::string> files;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--depth", opts.depth, "truncation depth K");
    sub->add_option("--words", opts.words, "word length bound L");
    sub->add_option("--lambda", lambda_text, "tree metric base p/q in (0,1)");
    sub->add_option("--seed", opts.seed, "seed for sampled checks");
    sub->add_option("--out", out_path, "write the report to this file");
  };
  auto* classify = app.add_subcommand("classify", "minimality, modulus, distality, measure, normality, McCord");
  classify->add_option("file", files, "config file")->required()->expected(1);
  add_common(classify);
  auto* compare = app.add_subcommand("compare", "chain interleaving test");
  compare->add_option("files", files, "two chain configs")->required()->expected(2);
  add_common(compare);
  auto* code = app.add_subcommand("code", "orbit coding chain");
  code->add_option("file", files, "config file")->required()->expected(1);
  add_common(code);
  auto* holonomy = app.add_subcommand("holonomy", "germinal holonomy of a stabilizing word");
  holonomy->add_option("file", files, "config file")->required()->expected(1);
  holonomy->add_option("--word", opts.word, "word, e.g. \"g1 f^-1\"")->required();
  holonomy->add_option("--at", opts.at, "address label")->required();
  add_common(holonomy);
  auto* measure = app.add_subcommand("measure", "invariant cylinder measure");
  measure->add_option("file", files, "config file")->required()->expected(1);
  add_common(measure);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (!lambda_text.empty()) {
      try {
        opts.lambda = solenoid::Rational::parse(lambda_text);
      } catch (const std::invalid_argument&) {
        throw solenoid::PreconditionError("malformed --lambda '" + lambda_text + "'");
      }
    }
    solenoid::ReportNode report;
    if (*classify) report = solenoid::classify(solenoid::load_config(files[0]), opts, files[0]);
    else if (*compare)
      report = solenoid::compare(solenoid::load_config(files[0]), solenoid::load_config(files[1]), opts, files[0],
                                 files[1]);
    else if (*code) report = solenoid::code(solenoid::load_config(files[0]), opts, files[0]);
    else if (*holonomy) report = solenoid::holonomy(solenoid::load_config(files[0]), opts, files[0]);
    else report = solenoid::measure(solenoid::load_config(files[0]), opts, files[0]);

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.section("timing").add("seconds", format_seconds(secs));
    const std::string text = report.str();
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw solenoid::PreconditionError("cannot write '" + out_path + "'");
      out << text;
    }
    return 0;
  } catch (const solenoid::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
