#include "pdopt/app/output.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <system_error>

namespace pdopt::app {

namespace fs = std::filesystem;

namespace {

fs::path temp_name(const fs::path& file) {
  fs::path tmp = file;
  tmp += ".partial";
  return tmp;
}

void write_whole(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + file.string() + "'");
}

}  // namespace

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open '" + file.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_atomic(const fs::path& file, const std::string& content) {
  const fs::path tmp = temp_name(file);
  try {
    write_whole(tmp, content);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename '" + tmp.string() + "' to '" + file.string() + "'");
  }
}

void OutputSet::add(std::string name, std::string content) {
  auto it = std::find_if(files_.begin(), files_.end(),
                         [&](const auto& f) { return f.first == name; });
  if (it != files_.end()) {
    it->second = std::move(content);
  } else {
    files_.emplace_back(std::move(name), std::move(content));
  }
}

bool OutputSet::contains(const std::string& name) const {
  return std::any_of(files_.begin(), files_.end(), [&](const auto& f) { return f.first == name; });
}

const std::string& OutputSet::content(const std::string& name) const {
  for (const auto& [n, c] : files_)
    if (n == name) return c;
  throw std::out_of_range("no output named '" + name + "'");
}

std::vector<std::string> OutputSet::names() const {
  std::vector<std::string> out;
  for (const auto& f : files_) out.push_back(f.first);
  return out;
}

void OutputSet::commit(const fs::path& dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::vector<fs::path> staged;
  try {
    for (const auto& [name, content] : files_) {
      const fs::path tmp = temp_name(dir / name);
      staged.push_back(tmp);
      write_whole(tmp, content);
    }
  } catch (...) {
    for (const auto& tmp : staged) fs::remove(tmp, ec);
    throw;
  }

  for (std::size_t i = 0; i < files_.size(); ++i) {
    fs::rename(staged[i], dir / files_[i].first, ec);
    if (ec) {
      for (std::size_t j = i; j < staged.size(); ++j) fs::remove(staged[j], ec);
      throw IoError("cannot move '" + staged[i].string() + "' into place");
    }
  }
}

}  // namespace pdopt::app
