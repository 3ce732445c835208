#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontoea {

/// Substring after the last '/' or '#'; the whole URI when neither occurs.
std::string local_name(std::string_view uri);

/// Lowercases ASCII letters and splits on non-alphanumeric ASCII bytes.
/// Bytes >= 0x80 are kept, so multi-byte UTF-8 sequences stay intact.
std::vector<std::string> tokenize_name(std::string_view name);

/// Pre-trained word vectors in the plain text format "token v1 ... v_dw",
/// with an optional "count dim" header line. All vectors share one width.
class WordVectorTable {
public:
    static WordVectorTable load(const std::filesystem::path& path);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }

    const std::vector<float>* find(const std::string& token) const;

    /// Mean of the vectors of in-vocabulary tokens of the name, L2-normalized.
    /// nullopt when no token is in vocabulary (caller falls back to random
    /// initialization).
    std::optional<std::vector<double>> name_embedding(std::string_view name) const;

private:
    std::unordered_map<std::string, std::vector<float>> vectors_;
    std::size_t dim_ = 0;
};

} // namespace ontoea
