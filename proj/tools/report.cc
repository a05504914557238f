// Copyright 2026 The chancmp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "report.h"

#include <iomanip>
#include <ostream>
#include <sstream>

using namespace chancmp_cli;

std::string chancmp_cli::format_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(10) << v;
    return ss.str();
}

void Report::heading(const std::string &text) {
    if (!lines_.empty()) {
        lines_.emplace_back();
    }
    lines_.push_back(text);
}

void Report::field(const std::string &key, const std::string &value) {
    lines_.push_back("  " + key + " = " + value);
}

void Report::field(const std::string &key, double value) {
    field(key, format_double(value));
}

void Report::line(const std::string &text) {
    lines_.push_back("  " + text);
}

void Report::matrix(const std::string &title, const Eigen::MatrixXd &m) {
    lines_.push_back("  " + title + ":");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::ostringstream row;
        row << "   ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row << " " << std::setw(12) << std::setprecision(6) << std::fixed << m(i, j);
        }
        lines_.push_back(row.str());
    }
}

void Report::matrix(const std::string &title, const chancmp::CMat &m) {
    if (m.imag().cwiseAbs().maxCoeff() < 1e-12) {
        matrix(title, Eigen::MatrixXd(m.real()));
        return;
    }
    lines_.push_back("  " + title + ":");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::ostringstream row;
        row << "   ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row << std::setprecision(5) << std::fixed << " " << std::setw(9) << m(i, j).real()
                << (m(i, j).imag() < 0 ? "-" : "+") << std::setw(7) << std::abs(m(i, j).imag()) << "i";
        }
        lines_.push_back(row.str());
    }
}

void Report::print(std::ostream &out, Format format) const {
    if (format == Format::Machine) {
        out << machine_.dump() << "\n";
        return;
    }
    for (const auto &l : lines_) {
        out << l << "\n";
    }
    out << "\n--- machine ---\n" << machine_.dump() << "\n";
}
