## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import sys

## local
from mbfbound.cli import main

if __name__ == "__main__":
    sys.exit(main())

## } MODULE
