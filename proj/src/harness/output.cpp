#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dirichlet/harness.hpp"

namespace dirichlet::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json stats_json(const ErrorStats& s)
{
    ordered_json j;
    j["max"] = s.max;
    j["rms"] = s.rms;
    return j;
}

}  // namespace

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_json(const RunReport& report)
{
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["command"] = report.command;
    j["geometry"] = report.geometry;
    j["dimension"] = report.dimension;
    j["N"] = report.n;
    j["near_boundary_band"] = report.band;
    j["interior_samples"] = report.interior_samples;
    j["oracle"] = report.oracle;
    ordered_json solvers = ordered_json::object();
    for (const auto& [name, s] : report.solvers) {
        ordered_json e = ordered_json::object();
        if (s.c1)
            e["C1"] = *s.c1;
        if (s.c2)
            e["C2"] = *s.c2;
        if (s.calibration_method)
            e["calibration_method"] = *s.calibration_method;
        if (s.calibration_rms_residual)
            e["calibration_rms_residual"] = *s.calibration_rms_residual;
        if (s.calibration_relative_rms_residual)
            e["calibration_relative_rms_residual"] = *s.calibration_relative_rms_residual;
        if (s.interior_error) {
            e["interior_max_error"] = s.interior_error->max;
            e["interior_rms_error"] = s.interior_error->rms;
        }
        if (s.neumann_max_error)
            e["neumann_max_error"] = *s.neumann_max_error;
        solvers[name] = e;
    }
    j["solvers"] = solvers;
    if (!report.comparison.empty()) {
        ordered_json cmp = ordered_json::object();
        for (const auto& [name, s] : report.comparison)
            cmp[name] = stats_json(s);
        j["comparison"] = cmp;
    }
    return j.dump(2) + "\n";
}

std::string timings_json(const RunReport& report)
{
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["command"] = report.command;
    j["N"] = report.n;
    for (const auto& [name, s] : report.solvers) {
        ordered_json t;
        t["assembly_s"] = s.times.assembly;
        t[name == "classical_bem" ? "solve_s" : "calibration_s"] = s.times.solve;
        t["evaluation_s"] = s.times.evaluation;
        j[name] = t;
    }
    return j.dump(2) + "\n";
}

void write_field_csv(const FieldGrid& grid, const std::filesystem::path& path)
{
    bool has_z = false, ss = false, bem = false, exact = false, err_ss = false, err_bem = false;
    for (const GridRow& r : grid.rows) {
        has_z |= r.z.has_value();
        ss |= r.psi_ss.has_value();
        bem |= r.psi_bem.has_value();
        exact |= r.psi_exact.has_value();
        err_ss |= r.abs_err_ss.has_value();
        err_bem |= r.abs_err_bem.has_value();
    }

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "x,y";
    if (has_z)
        out << ",z";
    out << ",region";
    if (ss)
        out << ",psi_ss";
    if (bem)
        out << ",psi_bem";
    if (exact)
        out << ",psi_exact";
    if (err_ss)
        out << ",abs_err_ss";
    if (err_bem)
        out << ",abs_err_bem";
    out << "\n";

    const auto cell = [&out](const std::optional<double>& v) {
        out << ',';
        if (v)
            out << format_number(*v);
    };
    for (const GridRow& r : grid.rows) {
        out << format_number(r.x) << ',' << format_number(r.y);
        if (has_z)
            cell(r.z);
        out << ',' << region_name(r.region);
        if (ss)
            cell(r.psi_ss);
        if (bem)
            cell(r.psi_bem);
        if (exact)
            cell(r.psi_exact);
        if (err_ss)
            cell(r.abs_err_ss);
        if (err_bem)
            cell(r.abs_err_bem);
        out << "\n";
    }
}

std::size_t CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw std::out_of_range("CSV column '" + name + "' not found");
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read '" + path.string() + "'");
    const auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        return cells;
    };
    CsvTable table;
    std::string line;
    if (std::getline(in, line))
        table.header = split(line);
    while (std::getline(in, line))
        if (!line.empty())
            table.rows.push_back(split(line));
    return table;
}

}  // namespace dirichlet::harness
