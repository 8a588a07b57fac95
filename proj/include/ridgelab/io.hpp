#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "ridgelab/data.hpp"
#include "ridgelab/experiments.hpp"
#include "ridgelab/train.hpp"

namespace ridgelab {

// Shortest exact decimal representation (std::to_chars); writing and parsing
// round-trips every finite double and is locale independent.
std::string format_double(double v);
double parse_double(const std::string& text);

// Dataset CSV with header x0,...,x{m-1},y.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& ds);
Dataset read_dataset_csv(const std::filesystem::path& path);

// Measure + coefficient bundle: JSON object with fields kind, atoms, weights,
// values and, for grid measures, grid. Real values are written as numbers,
// complex ones as [re, im] pairs.
void write_measure_coefficient_json(const std::filesystem::path& path, const ParamMeasure& meas,
                                    const Coefficient& coeff);
std::pair<ParamMeasure, Coefficient> read_measure_coefficient_json(const std::filesystem::path& path);

// Spectrum CSV: header a,b,value, rows in a-major node order.
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spec);
Spectrum read_spectrum_csv(const std::filesystem::path& path);

// Binary dump: int64 counts na, nb, then the a nodes, the b nodes and the
// na*nb values row-major (b fastest), all as little-endian doubles.
void write_spectrum_bin(const std::filesystem::path& path, const Spectrum& spec);
Spectrum read_spectrum_bin(const std::filesystem::path& path);

// Unit rows (a0,...,b,c).
void write_units_csv(const std::filesystem::path& path, const Eigen::MatrixXd& units, int dim);
Eigen::MatrixXd read_units_csv(const std::filesystem::path& path, int* dim_out = nullptr);

// Ensemble export: run,unit,a0,...,b,c,final_loss.
void write_ensemble_csv(const std::filesystem::path& path, const EnsembleResult& ens, int dim);

// Per-run loss trace: epoch,loss.
void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& trace);

// Gram matrix dump for debugging: plain CSV of matrix entries.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

}  // namespace ridgelab
