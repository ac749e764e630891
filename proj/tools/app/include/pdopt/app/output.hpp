#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pdopt::app {

/// File system failure while reading inputs or writing outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& file);

/// Writes `content` to a temporary sibling and renames it over `file`.
void write_file_atomic(const std::filesystem::path& file, const std::string& content);

/// The files of one command, held in memory until the command has finished.
///
/// commit() writes every file to a temporary name first and renames them
/// only after all writes succeeded, so a failing command leaves no partial
/// result files behind.
class OutputSet {
 public:
  void add(std::string name, std::string content);

  bool contains(const std::string& name) const;
  const std::string& content(const std::string& name) const;
  std::vector<std::string> names() const;

  void commit(const std::filesystem::path& dir) const;

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace pdopt::app
