/* Fixed-capacity ring buffer for byte streams. */

#include <assert.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>
#include <string.h>

#define RING_MIN_CAPACITY 16u

struct ring_buffer {
    uint8_t *storage;
    size_t capacity;
    size_t read_pos;
    size_t write_pos;
    size_t used;
    uint64_t total_written;
    uint64_t total_dropped;
};

struct ring_buffer *ring_create(size_t capacity)
{
    if (capacity < RING_MIN_CAPACITY) {
        capacity = RING_MIN_CAPACITY;
    }
    struct ring_buffer *ring = calloc(1, sizeof(*ring));
    if (ring == NULL) {
        return NULL;
    }
    ring->storage = malloc(capacity);
    if (ring->storage == NULL) {
        free(ring);
        return NULL;
    }
    ring->capacity = capacity;
    return ring;
}

void ring_destroy(struct ring_buffer *ring)
{
    if (ring == NULL) {
        return;
    }
    free(ring->storage);
    free(ring);
}

size_t ring_available(const struct ring_buffer *ring)
{
    return ring->capacity - ring->used;
}

bool ring_is_empty(const struct ring_buffer *ring)
{
    return ring->used == 0;
}

size_t ring_write(struct ring_buffer *ring, const uint8_t *data, size_t length)
{
    size_t writable = ring_available(ring);
    size_t to_copy = length < writable ? length : writable;
    if (to_copy < length) {
        ring->total_dropped += length - to_copy;
    }
    size_t tail_room = ring->capacity - ring->write_pos;
    size_t first_chunk = to_copy < tail_room ? to_copy : tail_room;
    memcpy(ring->storage + ring->write_pos, data, first_chunk);
    memcpy(ring->storage, data + first_chunk, to_copy - first_chunk);
    ring->write_pos = (ring->write_pos + to_copy) % ring->capacity;
    ring->used += to_copy;
    ring->total_written += to_copy;
    return to_copy;
}

size_t ring_read(struct ring_buffer *ring, uint8_t *out, size_t length)
{
    size_t to_copy = length < ring->used ? length : ring->used;
    size_t tail_room = ring->capacity - ring->read_pos;
    size_t first_chunk = to_copy < tail_room ? to_copy : tail_room;
    memcpy(out, ring->storage + ring->read_pos, first_chunk);
    memcpy(out + first_chunk, ring->storage, to_copy - first_chunk);
    ring->read_pos = (ring->read_pos + to_copy) % ring->capacity;
    ring->used -= to_copy;
    return to_copy;
}

size_t ring_skip(struct ring_buffer *ring, size_t length)
{
    size_t to_skip = length < ring->used ? length : ring->used;
    ring->read_pos = (ring->read_pos + to_skip) % ring->capacity;
    ring->used -= to_skip;
    return to_skip;
}

uint64_t ring_pressure_ratio_permille(const struct ring_buffer *ring)
{
    uint64_t seen = ring->total_written + ring->total_dropped;
    if (seen == 0) {
        return 0;
    }
    return (ring->total_dropped * 1000u) / seen;
}
