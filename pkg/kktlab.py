#!/usr/bin/env python3
"""
kktlab - Kantor-Koecher-Tits constructions from the command line.
Wrapper around core/kktlab/cli.py that picks up config/kktlab_config.json by default.

    python kktlab.py tower --jordan H3:O
    python kktlab.py grade --type E6 --node trivalent --emit table
"""

import os
import sys
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), 'core'))

from kktlab.cli import main

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config', 'kktlab_config.json')

if __name__ == "__main__":
    argv = sys.argv[1:]
    if "--config" not in argv and os.path.isfile(DEFAULT_CONFIG) and argv and not argv[0].startswith("-"):
        argv = argv + ["--config", DEFAULT_CONFIG]
    sys.exit(main(argv))
