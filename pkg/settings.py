import os

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("TARGETFACTOR_LOG_LEVEL", "WARNING").upper()

# Batched-gcd mode multiplies this many candidates before one gcd with n
BATCH_SIZE = int(os.getenv("TARGETFACTOR_BATCH_SIZE", "64"))

CANDIDATE_LIMIT = int(os.getenv("TARGETFACTOR_CANDIDATE_LIMIT", "50000000"))

# Largest modulus any direct (materializing) enumeration will accept
BRUTE_LIMIT = int(os.getenv("TARGETFACTOR_BRUTE_LIMIT", "10000000"))

THREADS = int(os.getenv("TARGETFACTOR_THREADS", "1"))
