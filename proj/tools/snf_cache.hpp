#pragma once

#include "twahss/exact_linalg/smith.hpp"

#include <filesystem>
#include <string>

namespace twahss::cli {

std::string sha256_hex(const std::string& bytes);

// Smith forms on disk, one JSON file per matrix, keyed by the SHA-256 of the
// matrix text. Writes go to a temporary file first and are renamed into place.
class FileSnfStore : public SnfStore
{
  public:
    explicit FileSnfStore(std::filesystem::path dir);

    std::optional<SmithResult> load(const IntMatrix& M) override;
    void save(const IntMatrix& M, const SmithResult& r) override;

    std::size_t hits() const { return hits_; }
    std::size_t writes() const { return writes_; }

  private:
    std::filesystem::path dir_;
    std::size_t hits_ = 0, writes_ = 0;
    std::filesystem::path path_for(const std::string& key) const;
};

std::string matrix_text(const IntMatrix& M);

}  // namespace twahss::cli
