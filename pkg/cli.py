# cli.py
from src.pipeline.cli import cli

if __name__ == '__main__':
    cli()
