#include "monosynth/cli.hpp"

int main( int argc, char** argv )
{
  return monosynth::cli::main( argc, argv );
}
