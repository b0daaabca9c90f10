#include "frameforge/io.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace frameforge {

using nlohmann::json;

namespace {

json frame_json(const FrameMatrix& F) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < F.d(); ++i)
        for (Eigen::Index j = 0; j < F.n(); ++j) {
            const auto z = F.entries(i, j);
            entries.push_back({z.real(), z.imag()});
        }
    return json{{"field", field_name(F.field)},
                {"d", F.d()},
                {"n", F.n()},
                {"entries", std::move(entries)}};
}

FrameMatrix frame_parse(const json& j) {
    const Field field = field_from_name(j.at("field").get<std::string>());
    const auto d = j.at("d").get<Eigen::Index>();
    const auto n = j.at("n").get<Eigen::Index>();
    if (d < 1 || n < 1) throw IoError("frame file: d and n must be positive");
    const json& entries = j.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != d * n)
        throw IoError("frame file: expected " + std::to_string(d * n) + " entries, found " +
                      std::to_string(entries.size()));
    Eigen::MatrixXcd m(d, n);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j2 = 0; j2 < n; ++j2) {
            const json& pair = entries.at(static_cast<size_t>(i * n + j2));
            if (!pair.is_array() || pair.size() != 2) throw IoError("frame file: entries must be [re, im] pairs");
            m(i, j2) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
        }
    FrameMatrix F(field, std::move(m));
    if (!F.satisfies_invariants())
        throw IoError("frame file: entries violate field invariants (non-finite, or imaginary parts in a real frame)");
    return F;
}

}  // namespace

std::string frame_to_json(const FrameMatrix& F) { return frame_json(F).dump(2) + "\n"; }

FrameMatrix frame_from_json(const std::string& text) {
    try {
        return frame_parse(json::parse(text));
    } catch (const json::exception& e) {
        throw IoError(std::string("frame file: ") + e.what());
    }
}

std::string spec_to_json(const NormSpec& spec) {
    json r = json::array();
    for (const auto& ri : spec.r) r.push_back(ri.str());
    return json{{"d", spec.d}, {"r", std::move(r)}}.dump(2) + "\n";
}

NormSpec spec_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        const int d = j.at("d").get<int>();
        std::vector<Rational> r;
        for (const auto& item : j.at("r")) {
            if (item.is_string())
                r.push_back(Rational::parse(item.get<std::string>()));
            else if (item.is_number_integer())
                r.push_back(Rational(item.get<long>()));
            else
                throw IoError("spec file: r entries must be \"p/q\" strings or integers");
        }
        return NormSpec(d, std::move(r));
    } catch (const json::exception& e) {
        throw IoError(std::string("spec file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("spec file: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

FrameMatrix read_frame_csv(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError("frame CSV '" + path.string() + "': bad number '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError("frame CSV '" + path.string() + "': ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("frame CSV '" + path.string() + "': empty file");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.front().size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return FrameMatrix::from_real(m);
}

void write_frame_csv(const std::filesystem::path& path, const FrameMatrix& F) {
    if (F.field != Field::Real) throw IoError("frame CSV supports real frames only");
    std::ostringstream out;
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < F.d(); ++i) {
        for (Eigen::Index j = 0; j < F.n(); ++j) {
            if (j) out << ',';
            out << F.entries(i, j).real();
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

}  // namespace

FrameMatrix read_frame(const std::filesystem::path& path) {
    if (path.extension() == ".csv") return read_frame_csv(path);
    return frame_from_json(read_text_file(path));
}

void write_frame(const std::filesystem::path& path, const FrameMatrix& F) {
    if (path.extension() == ".csv")
        write_frame_csv(path, F);
    else
        write_text_file(path, frame_to_json(F));
}

NormSpec read_spec(const std::filesystem::path& path) { return spec_from_json(read_text_file(path)); }

void write_spec(const std::filesystem::path& path, const NormSpec& spec) {
    write_text_file(path, spec_to_json(spec));
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceSample>& trace) {
    std::ostringstream out;
    out << "iteration,energy,grad_norm\n" << std::setprecision(17);
    for (const auto& s : trace) out << s.iteration << ',' << s.energy << ',' << s.grad_norm << '\n';
    write_text_file(path, out.str());
}

std::string file_content_hash(const std::filesystem::path& path) {
    const std::string bytes = read_text_file(path);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

}  // namespace frameforge
