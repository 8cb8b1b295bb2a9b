#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests drive it in-process.
//
// Exit status: 0 success, 1 invalid request (bad option, parse error, bad or
// unreadable file), 2 numerical failure or failed verification. Failures write
// one JSON line to `err`:
//   {"status":"error","code":N,"kind":"...","field":"...","message":"..."}

#include <ostream>
#include <string>
#include <vector>

namespace unitransform::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unitransform::cli
