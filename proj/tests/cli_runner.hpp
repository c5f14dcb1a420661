#pragma once

// Runs the walland binary through the shell and captures stdout and the
// exit status.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace cli {

struct Result {
  int status = -1;
  std::string out;
};

inline Result run(const std::string &args, const std::string &env = "") {
  std::string cmd = "cd '" WALLAND_SOURCE_DIR "' && " + env + " '" WALLAND_CLI "' " + args + " 2>/dev/null";
  Result r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cli
