"""명령줄 인터페이스

사용법 : mean_field_lab.py run [-v] [-o OUTPUT_DIR] [-j THREADS] CONFIG
        mean_field_lab.py list-problems
"""
import argparse
import logging
import sys
from typing import List, Optional, Sequence, TextIO

from ..errors import ConfigError
from ..problems import list_entries
from .runner import JOB_CONFIG_INVALID, JOB_DONE_SUCCESSFUL, run


def list_problems() -> str:
    """문제 목록과 매개변수 설명. 식별자 순으로 정렬되어 있어 항상 같은 문자열이다."""
    lines: List[str] = []
    for entry in list_entries():
        lines.append(entry.problem_id)
        lines.append(f"    {entry.summary}")
        lines.append(f"    (출처: {entry.section})")
        for param in entry.parameters:
            lines.append(f"    - {param.name} (기본값: {param.default!r}) : {param.description}")
        lines.append("")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="진행 상황을 자세히 출력할지 여부")

    parser = argparse.ArgumentParser(prog="mean_field_lab.py", description="평균장 최적 제어 실험 도구")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", parents=[common], help="설정 파일대로 실험을 실행한다")
    run_parser.add_argument("config", metavar="CONFIG", type=str, help="YAML 설정 파일")
    run_parser.add_argument("-o", "--output-dir", type=str, default=None, help="결과를 쓸 폴더 (설정 파일의 값보다 우선)")
    run_parser.add_argument("-j", "--threads", type=int, default=1, help="동시에 풀 문제 수 (기본값: 1)")

    subparsers.add_parser("list-problems", parents=[common], help="사용할 수 있는 문제와 매개변수를 보여 준다")
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """명령줄 진입점. 종료 코드를 반환한다.

    :param argv: 명령줄 인자. 기본값은 ``sys.argv[1:]``\\이다.
    :return: 성공하면 0, 풀이에 실패한 ``N``\\이 있으면 1, 설정 파일이 잘못되었으면 2
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )

    if args.command == "list-problems":
        stdout.write(list_problems())
        return JOB_DONE_SUCCESSFUL

    if args.threads < 1:
        print("`--threads` must be positive value.", file=stderr)
        return JOB_CONFIG_INVALID
    try:
        outcome = run(args.config, output_dir=args.output_dir, threads=args.threads)
    except ConfigError as e:
        print(f"Invalid configuration: {args.config}\nError details: {e}", file=stderr)
        return JOB_CONFIG_INVALID
    except OSError as e:
        print(f"An error occurred while reading the file: {args.config}\nError details: {e}", file=stderr)
        return JOB_CONFIG_INVALID

    for failure in outcome.failures:
        print(f"N={failure.n}: {failure.reason}", file=stderr)
    print(outcome.output_dir, file=stdout)
    return outcome.status


__all__ = ["build_parser", "list_problems", "main"]
