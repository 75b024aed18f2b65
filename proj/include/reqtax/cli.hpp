#pragma once

namespace reqtax::cli {

int run(int argc, char** argv);

}  // namespace reqtax::cli
