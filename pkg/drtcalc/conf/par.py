# PAR protocol defaults (time slices)
DEFAULT_PAR_PARAMS = {
    "data_count": 1,
    "t_s": 1,      # sender: read datum -> send frame
    "t_r": 1,      # receiver: read frame -> deliver datum
    "t_k": 1,      # data channel latency
    "t_l": 1,      # acknowledgement channel latency
    "t_s_prime": 5,  # sender time-out
    "t_r_prime": 1,  # receiver: deliver -> send acknowledgement
}

DEFAULT_HORIZON = 20

# Action naming
DATA_PREFIX = "d"
ACK = "ack"
ERROR_ACTION = "error"
