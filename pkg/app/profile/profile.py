"""
Module for profiling the statement compiler.
"""
import argparse
import cProfile
import os.path

from app.erd.info import build_parser_info
from app.erd.parser import read_erd
from app.erd.transform import transform
from app.sql.pipeline import compile_statement

UNI_ERD = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                       "test", "fixtures", "uni.erd")

STATEMENTS = (
    "Select s.Name From Student as s Where s.Age = {x};",
    "Select Distinct s.Name, r.Grade From Student as s, Result as r "
    "Where Satisfies s has_a r And r.Grade < 2.0;",
    "Select s.Name, l.Title From Student as s, Lecture as l "
    "Where Satisfies s Participation l And l.Hours > {h} Order By s.Name Limit 10;",
    "Update Student Set Email = {e} Where Age Between 20 And 30;",
)


def main():
    """
    Responsible for profiling repeated compilation of the Uni statements.
    """
    args = parse_args()
    model = read_erd(UNI_ERD)
    info = build_parser_info(model, transform(model), "Uni.db")
    pr = cProfile.Profile()
    pr.enable()
    for _ in range(args.runs):
        for statement in STATEMENTS:
            compile_statement(statement, info)
    pr.disable()
    pr.print_stats(sort='time')


def parse_args():
    """
    Returns parsed arguments
    """
    parser = argparse.ArgumentParser(description="Statement compiler profiler")
    parser.add_argument('--runs', dest='runs', type=int, default=1000,
                        help='Number of times every statement is compiled.')
    return parser.parse_args()


if __name__ == "__main__":
    main()
