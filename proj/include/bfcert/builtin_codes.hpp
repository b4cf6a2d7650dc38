#pragma once

#include <string>
#include <vector>

#include "bfcert/code_model.hpp"

namespace bfcert {

/// Names of the bundled QC2 benchmark codes ("C0" .. "C8").
const std::vector<std::string>& builtin_code_names();

bool is_builtin_code(const std::string& name);

ParityCheckMatrix load_builtin_code(const std::string& name);

/// Spec document for a bundled code, byte-identical to what code_spec_json
/// produces for the built matrix.
std::string builtin_code_json(const std::string& name);

/// Resolve "builtin:NAME" to a bundled code, anything else to a file path.
ParityCheckMatrix resolve_code_spec(const std::string& spec);

}
