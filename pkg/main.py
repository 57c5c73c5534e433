#!/usr/bin/env python3
"""
Cameron Operator Toolkit - Main Entry Point
Exact restricted/associated sequence transforms and modified hypergeometric numbers
"""

import os
import sys
import logging
from typing import List, Optional
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Add current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from models import CameronError, EngineDisagreement

def setup_logging(log_level: str = 'INFO', log_file: Optional[str] = None):
    """Configure application logging; stdout stays reserved for rendered output"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True
    )

def main(argv: Optional[List[str]] = None) -> int:
    """Parse, configure, dispatch; returns the process exit status"""
    from app import create_app
    from commands import parse

    args = parse(argv)
    if args is None:
        return 0

    logger = logging.getLogger(__name__)
    try:
        config = create_app(euler_second_reading=getattr(args, 'euler_second_reading', None))
        setup_logging(config.log_level, config.log_file)
        return args.func(args, config)

    except EngineDisagreement as e:
        logger.error(f"{e}: {e.values}")
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CameronError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 1
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        return 1

if __name__ == '__main__':
    sys.exit(main())
