#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cmt {

// Exit codes: 0 success, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

// Rows of tab-separated text for a JSON payload.
std::string to_tsv(const nlohmann::json& j);

// Bundled table directory: $CMT_DATA_DIR/tables if set, else the source tree copy.
std::string default_table_dir();

}  // namespace cmt
