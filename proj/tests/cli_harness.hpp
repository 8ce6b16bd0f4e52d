#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

// Runs the installed CLI binary and captures stdout plus the exit code.
// The binary path comes from the caller (test registration passes it through
// the ETAQ_BIN environment variable or argv).

namespace cli {

struct Result {
  int exit_code = -1;
  std::string out;
};

inline Result run(const std::string& bin, const std::string& args,
                  const std::string& env_prefix = "") {
  std::string cmd;
  if (!env_prefix.empty()) cmd += "env " + env_prefix + " ";
  cmd += "'" + bin + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  Result r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string binary_from_env() {
  const char* p = std::getenv("ETAQ_BIN");
  if (!p || !*p)
    throw std::runtime_error("ETAQ_BIN is not set; run through ctest");
  return p;
}

}  // namespace cli
