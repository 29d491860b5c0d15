#!/usr/bin/env python
"""평균장 최적 제어 실험 도구

사용법 : mean_field_lab.py run [-v] [-o OUTPUT_DIR] [-j THREADS] CONFIG
        mean_field_lab.py list-problems [-v]
"""
import sys

from mflab.experiment import main

if __name__ == "__main__":
    sys.exit(main())
