#pragma once

namespace bfcert {

inline constexpr const char* kVersion = "0.1.0";

}
