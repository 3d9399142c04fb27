#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace earring::cli {

enum class Status { Ok, Refuted, Error };

// One answer. Refuted is a negative answer to the question asked and carries
// the refutation in `payload`; Error carries a diagnostic in `text`.
struct CommandResult {
  Status status = Status::Ok;
  std::string text;
  nlohmann::json payload;
  std::chrono::duration<double> elapsed{};
};

std::string_view status_name(Status s);

// Exit code of a result stream: 2 if any error, else 1 if any refuted, else 0.
int exit_code(const std::vector<CommandResult>& results);

// Runs `earring <args...>` (args excludes the program name), writing results
// to out and diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace earring::cli
