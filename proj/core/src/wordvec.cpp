#include "ontoea/wordvec.hpp"

#include "ontoea/errors.hpp"
#include "ontoea/matrix.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ontoea {

std::string local_name(std::string_view uri) {
    std::size_t pos = uri.find_last_of("/#");
    if (pos == std::string_view::npos) return std::string(uri);
    return std::string(uri.substr(pos + 1));
}

std::vector<std::string> tokenize_name(std::string_view name) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char ch : name) {
        if (ch >= 0x80 || std::isalnum(ch)) {
            cur.push_back(static_cast<char>(std::tolower(ch)));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

WordVectorTable WordVectorTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open word-vector file: " + path.string());

    WordVectorTable table;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::istringstream ss(line);
        std::string token;
        ss >> token;
        std::vector<float> vec;
        double v;
        while (ss >> v) vec.push_back(static_cast<float>(v));

        if (first) {
            first = false;
            // Optional "count dim" header: exactly one numeric field after
            // an all-digit first field.
            if (vec.size() == 1 && !token.empty() &&
                token.find_first_not_of("0123456789") == std::string::npos) {
                continue;
            }
        }
        if (vec.empty()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": no vector components");
        }
        if (table.dim_ == 0) {
            table.dim_ = vec.size();
        } else if (vec.size() != table.dim_) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": inconsistent vector width (" + std::to_string(vec.size()) +
                            " vs " + std::to_string(table.dim_) + ")");
        }
        table.vectors_.emplace(std::move(token), std::move(vec));
    }
    return table;
}

const std::vector<float>* WordVectorTable::find(const std::string& token) const {
    auto it = vectors_.find(token);
    return it == vectors_.end() ? nullptr : &it->second;
}

std::optional<std::vector<double>> WordVectorTable::name_embedding(std::string_view name) const {
    std::vector<double> sum(dim_, 0.0);
    std::size_t hits = 0;
    for (const std::string& token : tokenize_name(name)) {
        if (const std::vector<float>* v = find(token)) {
            for (std::size_t i = 0; i < dim_; ++i) sum[i] += (*v)[i];
            ++hits;
        }
    }
    if (hits == 0) return std::nullopt;
    for (double& x : sum) x /= double(hits);
    normalize_inplace(sum);
    return sum;
}

} // namespace ontoea
