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

#ifndef CORPUSFORGE_RESOURCES_H_
#define CORPUSFORGE_RESOURCES_H_

#include <filesystem>
#include <string>
#include <vector>

namespace corpusforge {

// Resolves the resource directory: explicit override, then the
// CORPUSFORGE_RESOURCES environment variable, then the installed default.
std::filesystem::path resource_dir(const std::string& override_dir = "");

// Reads a line-oriented resource file: UTF-8, one entry per line, `#` starts
// a comment, blank lines ignored, entries trimmed.
std::vector<std::string> load_line_list(const std::filesystem::path& file);

}  // namespace corpusforge

#endif  // CORPUSFORGE_RESOURCES_H_
