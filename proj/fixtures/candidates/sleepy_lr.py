import time


def adjust_learning_rate(init_learning_rate, step_num, log_objective, log_objective_prev,
                         overflow, log_lambda, learning_rate_prev, log_gradient_norm):
    time.sleep(30.0)
    return init_learning_rate
