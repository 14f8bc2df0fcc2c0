// Copyright 2026 The CorpusForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corpusforge/resources.h"

#include <cstdlib>
#include <fstream>

#include "corpusforge/error.h"

#ifndef CORPUSFORGE_INSTALL_RESOURCE_DIR
#define CORPUSFORGE_INSTALL_RESOURCE_DIR "/usr/local/share/corpusforge/resources"
#endif

namespace corpusforge {

std::filesystem::path resource_dir(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("CORPUSFORGE_RESOURCES")) {
    if (env[0] != '\0') return env;
  }
  return CORPUSFORGE_INSTALL_RESOURCE_DIR;
}

std::vector<std::string> load_line_list(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open resource file: " + file.string());
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    entries.push_back(line.substr(b, e - b + 1));
  }
  return entries;
}

}  // namespace corpusforge
