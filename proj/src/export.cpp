#include "wgm/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace wgm {

namespace {

std::string format_cell(double v) {
    if (std::isnan(v)) return "";  // blank cell (e.g. eikonal collar samples)
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export: cannot open " + path.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("export: write failed for " + path.string());
}

std::string render_csv(const Table& table) {
    std::ostringstream os;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_cell(row[c]);
        os << "\n";
    }
    return os.str();
}

std::string render_dat(const Table& table) {
    std::ostringstream os;
    os << "#";
    for (const auto& c : table.columns) os << " " << c;
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? " " : "") << (std::isnan(row[c]) ? "nan" : format_cell(row[c]));
        os << "\n";
    }
    return os.str();
}

const Table* find_table(const ResultBundle& bundle, const std::string& name) {
    for (const Table& t : bundle.tables)
        if (t.name == name) return &t;
    return nullptr;
}

std::string gnuplot_script(const ResultBundle& bundle) {
    std::ostringstream os;
    os << "set terminal pngcairo size 900,600\n";
    if (find_table(bundle, "potential")) {
        os << "\nset output 'potential.png'\n"
           << "set xlabel 's'\nset ylabel 'V_c(s)'\n";
        if (bundle.sections.contains("potential")) {
            const double e0 = bundle.sections["potential"]["E_0"].get<double>();
            os << "E0 = " << e0 << "\n";
            if (bundle.sections.contains("agmon")) {
                const double rho = bundle.sections["agmon"]["rho_E"].get<double>();
                os << "set arrow from " << rho << ", graph 0 to " << rho
                   << ", graph 1 nohead dt 2\n";
            }
            os << "plot 'potential.dat' using 1:4 with lines title 'V_c', E0 with lines dt 3 "
                  "title 'E_0'\n";
        }
    }
    if (find_table(bundle, "agmon")) {
        os << "\nset output 'agmon.png'\n"
           << "set xlabel 's'\nset ylabel 'd_{A,E}(s)'\n"
           << "plot 'agmon.dat' using 1:2 with lines title 'Agmon distance'\n";
    }
    if (find_table(bundle, "decay")) {
        os << "\nset output 'decay.png'\n"
           << "set xlabel 'n'\nset ylabel 'log10 mass'\n";
        if (bundle.sections.contains("decay")) {
            const double d = bundle.sections["decay"]["d_fit"].get<double>();
            const double b = bundle.sections["decay"]["intercept"].get<double>();
            os << "fitline(x) = (" << b << " - " << d << "*x)/log(10)\n"
               << "plot 'decay.dat' using 1:(log10($3)) with points title 'mass', "
                  "fitline(x) with lines title 'fit'\n";
        } else {
            os << "plot 'decay.dat' using 1:(log10($3)) with points title 'mass'\n";
        }
    }
    if (find_table(bundle, "quasimode")) {
        os << "\nset output 'quasimode.png'\n"
           << "set logscale xy\nset xlabel 'h'\nset ylabel 'residual'\n"
           << "plot 'quasimode.dat' using 1:2 with linespoints title 'residual'\n"
           << "unset logscale\n";
    }
    if (find_table(bundle, "waves")) {
        os << "\nset output 'waves.png'\n"
           << "set xlabel 'Lambda'\nset ylabel 'log10 spacetime norm'\n"
           << "plot 'waves.dat' using 2:(log10($3)) with linespoints title 'observation'\n";
    }
    return os.str();
}

}  // namespace

std::vector<std::filesystem::path> export_bundle(const ResultBundle& bundle,
                                                 const std::filesystem::path& dir,
                                                 ExportFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("export: cannot create directory " + dir.string());

    std::vector<std::filesystem::path> written;
    switch (format) {
        case ExportFormat::csv:
            for (const Table& t : bundle.tables) {
                const auto path = dir / (t.name + ".csv");
                write_file(path, render_csv(t));
                written.push_back(path);
            }
            break;
        case ExportFormat::json: {
            const auto path = dir / "bundle.json";
            write_file(path, bundle.to_json().dump(2) + "\n");
            written.push_back(path);
            break;
        }
        case ExportFormat::gnuplot: {
            for (const Table& t : bundle.tables) {
                const auto path = dir / (t.name + ".dat");
                write_file(path, render_dat(t));
                written.push_back(path);
            }
            const auto script = dir / "plots.gp";
            write_file(script, gnuplot_script(bundle));
            written.push_back(script);
            break;
        }
    }
    return written;
}

ResultBundle parse_bundle(const nlohmann::json& root) {
    ResultBundle bundle;
    bundle.config_echo = root.at("config_echo").get<std::string>();
    bundle.sections = root.at("sections");
    bundle.provenance = root.at("provenance");
    for (const auto& jt : root.at("tables")) {
        Table t;
        t.name = jt.at("name").get<std::string>();
        t.columns = jt.at("columns").get<std::vector<std::string>>();
        for (const auto& row : jt.at("rows")) {
            std::vector<double> cells;
            for (const auto& cell : row)
                cells.push_back(cell.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                               : cell.get<double>());
            t.rows.push_back(std::move(cells));
        }
        bundle.tables.push_back(std::move(t));
    }
    for (const auto& jc : root.at("checks"))
        bundle.checks.push_back({jc.at("name").get<std::string>(),
                                 jc.at("pass").get<bool>(), jc.at("fatal").get<bool>(),
                                 jc.at("detail").get<std::string>()});
    return bundle;
}

}  // namespace wgm
