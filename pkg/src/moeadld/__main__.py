import sys

from moeadld.harness.cli import main

sys.exit(main())
