#include "ridgelab/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <system_error>

#include "ridgelab/errors.hpp"

namespace ridgelab {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw IoError("could not parse number '" + text + "'");
    return v;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds) {
    ds.validate();
    auto out = open_out(path);
    for (int d = 0; d < ds.dim(); ++d) out << "x" << d << ",";
    out << "y\n";
    for (long i = 0; i < ds.size(); ++i) {
        for (int d = 0; d < ds.dim(); ++d) out << format_double(ds.x(i, d)) << ",";
        out << format_double(ds.y(i)) << "\n";
    }
    finish_write(out, path);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("dataset '" + path.string() + "': missing header");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header.back() != "y")
        throw IoError("dataset '" + path.string() + "': expected header x0,...,y");
    const int m = static_cast<int>(header.size()) - 1;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != m + 1)
            throw IoError("dataset '" + path.string() + "': ragged row");
        std::vector<double> row(m + 1);
        for (int j = 0; j <= m; ++j) row[j] = parse_double(fields[j]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("dataset '" + path.string() + "': no samples");
    Dataset ds;
    ds.x.resize(static_cast<long>(rows.size()), m);
    ds.y.resize(static_cast<long>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int d = 0; d < m; ++d) ds.x(static_cast<long>(i), d) = rows[i][d];
        ds.y(static_cast<long>(i)) = rows[i][m];
    }
    ds.validate();
    return ds;
}

void write_measure_coefficient_json(const std::filesystem::path& path, const ParamMeasure& meas,
                                    const Coefficient& coeff) {
    meas.validate();
    coeff.validate(meas);
    json j;
    j["kind"] = meas.kind == MeasureKind::Grid ? "grid" : "dirac";
    json atoms = json::array();
    for (long k = 0; k < meas.atom_count(); ++k) {
        json atom = json::array();
        for (int d = 0; d < meas.dim(); ++d) atom.push_back(meas.atom_a(k, d));
        atom.push_back(meas.atom_b(k));
        atoms.push_back(std::move(atom));
    }
    j["atoms"] = std::move(atoms);
    j["weights"] = std::vector<double>(meas.weights.data(), meas.weights.data() + meas.atom_count());
    json values = json::array();
    for (long k = 0; k < coeff.size(); ++k) {
        const auto z = coeff.values(k);
        if (z.imag() == 0.0)
            values.push_back(z.real());
        else
            values.push_back(json::array({z.real(), z.imag()}));
    }
    j["values"] = std::move(values);
    if (meas.grid) {
        const GridSpec& g = *meas.grid;
        j["grid"] = {{"a_min", g.a_min}, {"a_max", g.a_max}, {"a_steps", g.a_steps},
                     {"b_min", g.b_min}, {"b_max", g.b_max}, {"b_steps", g.b_steps}};
    }
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    finish_write(out, path);
}

std::pair<ParamMeasure, Coefficient> read_measure_coefficient_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("bad JSON in '" + path.string() + "': " + e.what());
    }
    try {
        const auto& atoms = j.at("atoms");
        const long M = static_cast<long>(atoms.size());
        if (M < 1) throw IoError("'" + path.string() + "': empty atom list");
        const int m = static_cast<int>(atoms.at(0).size()) - 1;
        ParamMeasure meas;
        meas.atom_a.resize(M, m);
        meas.atom_b.resize(M);
        for (long k = 0; k < M; ++k) {
            const auto& atom = atoms.at(k);
            for (int d = 0; d < m; ++d) meas.atom_a(k, d) = atom.at(d).get<double>();
            meas.atom_b(k) = atom.at(m).get<double>();
        }
        const auto& weights = j.at("weights");
        meas.weights.resize(M);
        for (long k = 0; k < M; ++k) meas.weights(k) = weights.at(k).get<double>();
        meas.kind = j.at("kind").get<std::string>() == "grid" ? MeasureKind::Grid : MeasureKind::DiracSum;
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            meas.grid = GridSpec{g.at("a_min").get<double>(), g.at("a_max").get<double>(),
                                 g.at("b_min").get<double>(), g.at("b_max").get<double>(),
                                 g.at("a_steps").get<int>(),  g.at("b_steps").get<int>()};
        }
        meas.validate();
        const auto& values = j.at("values");
        Coefficient coeff = Coefficient::zeros(M);
        for (long k = 0; k < static_cast<long>(values.size()) && k < M; ++k) {
            const auto& v = values.at(k);
            if (v.is_array())
                coeff.values(k) = {v.at(0).get<double>(), v.at(1).get<double>()};
            else
                coeff.values(k) = v.get<double>();
        }
        coeff.validate(meas);
        return {std::move(meas), std::move(coeff)};
    } catch (const json::exception& e) {
        throw IoError("bad measure/coefficient schema in '" + path.string() + "': " + e.what());
    }
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spec) {
    auto out = open_out(path);
    out << "a,b,value\n";
    for (long ia = 0; ia < spec.a_grid.size(); ++ia)
        for (long ib = 0; ib < spec.b_grid.size(); ++ib)
            out << format_double(spec.a_grid(ia)) << "," << format_double(spec.b_grid(ib)) << ","
                << format_double(spec.values(ia, ib)) << "\n";
    finish_write(out, path);
}

Spectrum read_spectrum_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"a", "b", "value"})
        throw IoError("spectrum '" + path.string() + "': expected header a,b,value");
    std::vector<double> as, bs, vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) throw IoError("spectrum '" + path.string() + "': ragged row");
        as.push_back(parse_double(fields[0]));
        bs.push_back(parse_double(fields[1]));
        vals.push_back(parse_double(fields[2]));
    }
    if (vals.empty()) throw IoError("spectrum '" + path.string() + "': no rows");
    // rows are a-major: b cycles fastest
    long nb = 1;
    while (nb < static_cast<long>(bs.size()) && bs[nb] != bs[0]) ++nb;
    const long na = static_cast<long>(vals.size()) / nb;
    if (na * nb != static_cast<long>(vals.size()))
        throw IoError("spectrum '" + path.string() + "': not a full lattice");
    Spectrum spec;
    spec.a_grid.resize(na);
    spec.b_grid.resize(nb);
    spec.values.resize(na, nb);
    for (long ib = 0; ib < nb; ++ib) spec.b_grid(ib) = bs[ib];
    for (long ia = 0; ia < na; ++ia) {
        spec.a_grid(ia) = as[ia * nb];
        for (long ib = 0; ib < nb; ++ib) {
            if (bs[ia * nb + ib] != spec.b_grid(ib) || as[ia * nb + ib] != spec.a_grid(ia))
                throw IoError("spectrum '" + path.string() + "': irregular lattice");
            spec.values(ia, ib) = vals[ia * nb + ib];
        }
    }
    spec.normalization = SpectrumNormalization::RawSum;
    return spec;
}

void write_spectrum_bin(const std::filesystem::path& path, const Spectrum& spec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    const std::int64_t na = spec.a_grid.size();
    const std::int64_t nb = spec.b_grid.size();
    out.write(reinterpret_cast<const char*>(&na), sizeof(na));
    out.write(reinterpret_cast<const char*>(&nb), sizeof(nb));
    out.write(reinterpret_cast<const char*>(spec.a_grid.data()), na * sizeof(double));
    out.write(reinterpret_cast<const char*>(spec.b_grid.data()), nb * sizeof(double));
    for (std::int64_t ia = 0; ia < na; ++ia)
        for (std::int64_t ib = 0; ib < nb; ++ib) {
            const double v = spec.values(ia, ib);
            out.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Spectrum read_spectrum_bin(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::int64_t na = 0, nb = 0;
    in.read(reinterpret_cast<char*>(&na), sizeof(na));
    in.read(reinterpret_cast<char*>(&nb), sizeof(nb));
    if (!in || na < 1 || nb < 1) throw IoError("spectrum '" + path.string() + "': bad binary header");
    Spectrum spec;
    spec.a_grid.resize(na);
    spec.b_grid.resize(nb);
    spec.values.resize(na, nb);
    in.read(reinterpret_cast<char*>(spec.a_grid.data()), na * sizeof(double));
    in.read(reinterpret_cast<char*>(spec.b_grid.data()), nb * sizeof(double));
    for (std::int64_t ia = 0; ia < na; ++ia)
        for (std::int64_t ib = 0; ib < nb; ++ib) {
            double v = 0.0;
            in.read(reinterpret_cast<char*>(&v), sizeof(v));
            spec.values(ia, ib) = v;
        }
    if (!in) throw IoError("spectrum '" + path.string() + "': truncated binary payload");
    spec.normalization = SpectrumNormalization::RawSum;
    return spec;
}

void write_units_csv(const std::filesystem::path& path, const Eigen::MatrixXd& units, int dim) {
    if (units.cols() != dim + 2) throw std::invalid_argument("write_units_csv: column count mismatch");
    auto out = open_out(path);
    for (int d = 0; d < dim; ++d) out << "a" << d << ",";
    out << "b,c\n";
    for (long i = 0; i < units.rows(); ++i) {
        for (long j = 0; j < units.cols(); ++j) {
            out << format_double(units(i, j));
            out << (j + 1 < units.cols() ? "," : "\n");
        }
    }
    finish_write(out, path);
}

Eigen::MatrixXd read_units_csv(const std::filesystem::path& path, int* dim_out) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("units '" + path.string() + "': missing header");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[header.size() - 2] != "b" || header.back() != "c")
        throw IoError("units '" + path.string() + "': expected header a0,...,b,c");
    const int dim = static_cast<int>(header.size()) - 2;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) throw IoError("units '" + path.string() + "': ragged row");
        std::vector<double> row(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) row[j] = parse_double(fields[j]);
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd units(static_cast<long>(rows.size()), dim + 2);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < dim + 2; ++j) units(static_cast<long>(i), j) = rows[i][j];
    if (dim_out) *dim_out = dim;
    return units;
}

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleResult& ens, int dim) {
    auto out = open_out(path);
    out << "run,unit,";
    for (int d = 0; d < dim; ++d) out << "a" << d << ",";
    out << "b,c,final_loss\n";
    for (std::size_t r = 0; r < ens.runs.size(); ++r) {
        const NetworkParams& theta = ens.runs[r].params;
        for (long j = 0; j < theta.unit_count(); ++j) {
            out << ens.run_ids[r] << "," << j << ",";
            for (int d = 0; d < dim; ++d) out << format_double(theta.a(j, d)) << ",";
            out << format_double(theta.b(j)) << "," << format_double(theta.c(j)) << ","
                << format_double(ens.final_losses[r]) << "\n";
        }
    }
    finish_write(out, path);
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& trace) {
    auto out = open_out(path);
    out << "epoch,loss\n";
    for (std::size_t e = 0; e < trace.size(); ++e)
        out << e << "," << format_double(trace[e]) << "\n";
    finish_write(out, path);
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    auto out = open_out(path);
    for (long i = 0; i < m.rows(); ++i) {
        for (long j = 0; j < m.cols(); ++j) {
            out << format_double(m(i, j));
            out << (j + 1 < m.cols() ? "," : "\n");
        }
    }
    finish_write(out, path);
}

}  // namespace ridgelab
