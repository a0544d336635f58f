import sys

from fracivp.harness import main

sys.exit(main())
