// relalg: command-line front end for the relalg core library.
#include <iostream>

#include "cli.hpp"
#include "relalg/errors.hpp"
#include "relalg/io.hpp"

int main(int argc, char** argv) {
  using namespace relalg;
  using namespace relalg::cli;

  CLI::App app{"Finite relation algebra workbench: L(p,n) algebras, representations, "
               "random weak representations and equational complexity."};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_flag("--json", ctx.json, "Machine-readable JSON output");
  app.add_option("--threads", ctx.threads, "Worker threads (output does not depend on it)")
      ->check(CLI::Range(1U, 256U));
  app.footer(
      "Exit codes: 0 ok, 1 verification FAIL, 2 usage, 3 file/parse, 4 resource budget, "
      "5 internal error.\n"
      "Budgets: RELALG_MAX_BASE (verification base, default 4096), RELALG_MAX_IMAGE_BASE "
      "(16384), RELALG_MAX_FAST_BASE (8192), RELALG_MAX_ASSIGNMENTS (2^24), "
      "RELALG_IMAGE_CACHE_MB (512).");

  int status = kOk;
  register_algebra_commands(app, ctx, status);
  register_structure_commands(app, ctx, status);
  register_random_commands(app, ctx, status);
  register_complexity_commands(app, ctx, status);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFile;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kFile;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return status;
}
