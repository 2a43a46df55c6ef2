#include "simgen/datagen/dataset_io.hpp"

#include <fstream>
#include <sstream>

#include "simgen/util/format.hpp"

namespace simgen::datagen {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string series_filename(std::uint64_t index) {
    return "series_" + std::to_string(index) + ".csv";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_csv(const Dataset& ds, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

    json manifest;
    manifest["master_seed"] = ds.master_seed;
    manifest["column_names"] = ds.column_names;
    manifest["config"] = ds.config_echo;
    json entries = json::array();
    for (const auto& s : ds.series) {
        json e;
        e["index"] = s.index;
        e["seed"] = s.seed;
        e["file"] = series_filename(s.index);
        e["params"] = s.sampled_params;
        e["initial_conditions"] = s.sampled_initial;
        entries.push_back(std::move(e));
    }
    manifest["series"] = std::move(entries);

    {
        std::ofstream out(dir / "manifest.json");
        if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
        out << manifest.dump(2) << '\n';
    }

    for (const auto& s : ds.series) {
        std::ofstream out(dir / series_filename(s.index));
        if (!out) throw IoError("cannot write series file for index " + std::to_string(s.index));
        out << 't';
        for (const auto& name : ds.column_names) out << ',' << name;
        out << '\n';
        for (std::size_t r = 0; r < s.times.size(); ++r) {
            out << util::format_double(s.times[r]);
            for (const auto& col : s.columns) out << ',' << util::format_double(col[r]);
            out << '\n';
        }
    }
}

Dataset read_csv(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw IoError("cannot open " + (dir / "manifest.json").string());
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw SchemaMismatch("manifest.json is not valid JSON: " + std::string(e.what()));
    }

    Dataset ds;
    try {
        ds.master_seed = manifest.at("master_seed").get<std::uint64_t>();
        ds.column_names = manifest.at("column_names").get<std::vector<std::string>>();
        ds.config_echo = manifest.value("config", json());
        for (const auto& e : manifest.at("series")) {
            Series s;
            s.index = e.at("index").get<std::uint64_t>();
            s.seed = e.at("seed").get<std::uint64_t>();
            s.sampled_params = e.at("params").get<std::map<std::string, double>>();
            s.sampled_initial = e.at("initial_conditions").get<std::map<std::string, double>>();

            fs::path file = dir / e.at("file").get<std::string>();
            std::ifstream sf(file);
            if (!sf)
                throw SchemaMismatch("manifest lists " + file.filename().string() +
                                     " but the file is missing");
            std::string line;
            if (!std::getline(sf, line)) throw SchemaMismatch(file.string() + ": empty file");
            auto header = split_csv_line(line);
            if (header.size() != ds.column_names.size() + 1 || header[0] != "t")
                throw SchemaMismatch(file.string() + ": unexpected header");
            for (std::size_t c = 0; c < ds.column_names.size(); ++c)
                if (header[c + 1] != ds.column_names[c])
                    throw SchemaMismatch(file.string() + ": column name mismatch");
            s.columns.resize(ds.column_names.size());
            while (std::getline(sf, line)) {
                if (line.empty()) continue;
                auto fields = split_csv_line(line);
                if (fields.size() != ds.column_names.size() + 1)
                    throw SchemaMismatch(file.string() + ": wrong field count");
                s.times.push_back(util::parse_double(fields[0]));
                for (std::size_t c = 0; c < s.columns.size(); ++c)
                    s.columns[c].push_back(util::parse_double(fields[c + 1]));
            }
            ds.series.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw SchemaMismatch("manifest.json schema error: " + std::string(e.what()));
    } catch (const std::invalid_argument& e) {
        throw SchemaMismatch("bad numeric field: " + std::string(e.what()));
    }
    return ds;
}

}  // namespace simgen::datagen
